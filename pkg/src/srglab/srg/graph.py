"""Explicit graphs with packed bit adjacency, and their measurement.

Adjacency rows are stored as little-endian bit rows packed into uint64 words,
so |N(P) & Y| for any vertex set Y is a popcount of a word-wise AND.
"""

import logging
import time
from dataclasses import dataclass, field
from functools import cached_property

import networkx as nx
import numpy as np
from tqdm import tqdm

from srglab.config import DEFAULT_CONFIG, Config
from srglab.exceptions import NotRegular, NotStronglyRegular, WrongField
from srglab.geometry import (
    Family,
    HermitianSpaceSpec,
    ProjectivePoint,
    QuadraticFormSpec,
    Vector,
    format_coords,
    tangent_criterion,
    vertex_array,
)
from srglab.geometry.matrix import encode_rows, fadd, fmul
from srglab.gf import FieldSpec
from srglab.srg.families import GraphSpec, SrgParams, validate_spec

logger = logging.getLogger(__name__)

WORD_BUDGET = 1 << 22


def pack_rows(rows: np.ndarray, width: int) -> np.ndarray:
    """Pack boolean rows of length width into uint64 words."""
    words = (width + 63) // 64
    padded = np.zeros((rows.shape[0], words * 64), dtype=bool)
    padded[:, :width] = rows
    return np.packbits(padded, axis=1, bitorder="little").view(np.uint64)


def unpack_rows(packed: np.ndarray, width: int) -> np.ndarray:
    bits = np.unpackbits(np.ascontiguousarray(packed).view(np.uint8), axis=1, bitorder="little")
    return bits[:, :width].astype(bool)


@dataclass
class Graph:
    """A built graph: canonical vertices plus packed adjacency rows."""

    spec: GraphSpec
    vertices: np.ndarray
    packed: np.ndarray
    form: QuadraticFormSpec | HermitianSpaceSpec | None = None
    build_seconds: float = field(default=0.0, compare=False)

    @classmethod
    def from_adjacency(
        cls,
        spec: GraphSpec,
        adj: np.ndarray,
        vertices: np.ndarray | None = None,
        form: QuadraticFormSpec | HermitianSpaceSpec | None = None,
    ) -> "Graph":
        adj = np.asarray(adj, dtype=bool)
        if vertices is None:
            vertices = np.arange(len(adj), dtype=np.int64)[:, None]
        return cls(spec, np.asarray(vertices), pack_rows(adj, len(adj)), form)

    @property
    def v(self) -> int:
        return len(self.vertices)

    @property
    def field(self) -> FieldSpec | None:
        if isinstance(self.form, HermitianSpaceSpec):
            return self.form.big_field
        if isinstance(self.form, QuadraticFormSpec):
            return self.form.field
        return None

    def adjacency(self) -> np.ndarray:
        return unpack_rows(self.packed, self.v)

    def row(self, i: int) -> np.ndarray:
        return unpack_rows(self.packed[i : i + 1], self.v)[0]

    def neighbours(self, i: int) -> np.ndarray:
        return np.flatnonzero(self.row(i))

    def degrees(self) -> np.ndarray:
        return np.bitwise_count(self.packed).sum(axis=1, dtype=np.int64)

    def is_symmetric(self) -> bool:
        adj = self.adjacency()
        return bool(np.array_equal(adj, adj.T) and not adj.diagonal().any())

    def mask(self, indices: np.ndarray) -> np.ndarray:
        """Packed bit row of a vertex subset."""
        row = np.zeros((1, self.v), dtype=bool)
        row[0, np.asarray(indices, dtype=np.int64)] = True
        return pack_rows(row, self.v)[0]

    def count_into(self, indices: np.ndarray) -> np.ndarray:
        """|N(P) & Y| for every vertex P."""
        return np.bitwise_count(self.packed & self.mask(indices)[None, :]).sum(
            axis=1, dtype=np.int64
        )

    # -- vertex lookup -------------------------------------------------------

    @cached_property
    def _codes(self) -> np.ndarray:
        base = self.field.order if self.field is not None else int(self.vertices.max()) + 1
        return encode_rows(self.vertices, base)

    def index_of(self, rows: np.ndarray) -> np.ndarray:
        """Vertex indices of canonical coordinate rows; -1 where a row is not a vertex."""
        rows = np.atleast_2d(np.asarray(rows, dtype=np.int64))
        base = self.field.order if self.field is not None else int(self.vertices.max()) + 1
        codes = encode_rows(rows, base)
        pos = np.searchsorted(self._codes, codes)
        pos = np.minimum(pos, self.v - 1)
        return np.where(self._codes[pos] == codes, pos, -1)

    def point(self, i: int) -> ProjectivePoint:
        if self.field is None:
            raise WrongField("Graph has no coordinate field")
        return ProjectivePoint(Vector(tuple(int(c) for c in self.vertices[i]), self.field))

    def label(self, i: int) -> str:
        if self.field is None:
            return str(i)
        return format_coords(self.field, self.vertices[i])

    # -- export --------------------------------------------------------------

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.v))
        rows, cols = np.nonzero(np.triu(self.adjacency(), k=1))
        graph.add_edges_from(zip(rows.tolist(), cols.tolist(), strict=True))
        return graph

    def to_dot(self) -> str:
        lines = ["graph G {"]
        for i in range(self.v):
            lines.append(f'  {i} [label="{self.label(i)}"];')
        rows, cols = np.nonzero(np.triu(self.adjacency(), k=1))
        for i, j in zip(rows.tolist(), cols.tolist(), strict=True):
            lines.append(f"  {i} -- {j};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        return f"Graph({self.spec.label}, v={self.v})"


# ---------------------------------------------------------------------------
# Building
# ---------------------------------------------------------------------------


def _orthogonal_block(spec: GraphSpec, form: QuadraticFormSpec, block, vertices, q_values, rows):
    if spec.family is Family.NO_ODD:
        return tangent_criterion(form, block, vertices, q_values[rows], q_values)
    return form.polar(block, vertices) == 0


def _hermitian_block(spec: GraphSpec, space: HermitianSpaceSpec, block, vertices, h_values, rows):
    big = space.big_field
    u, v = vertices[:, 0], vertices[:, 1]
    H = space.H_values(block[:, 0, None], block[:, 1, None], u[None, :], v[None, :])
    lhs = big.power_table(spec.q + 1)[H]
    rhs = big.mul_table[h_values[rows][:, None], h_values[None, :]]
    return lhs == rhs


def build_graph(spec: GraphSpec, config: Config | None = None, cache=None) -> Graph:
    """Build the family's graph.

    Adjacency:
        no-perp, no-even3, no-even2   B(x, y) = 0
        no-odd                        B(x, y)^2 = 4 Q(x) Q(y)
        nu                            H(x, y)^(q+1) = h(x) h(y)

    Args:
        spec: Graph specification
        config: Caps, block size and progress settings
        cache: Optional GraphCache consulted before building and filled after

    Raises:
        UnsupportedParameters: spec outside the validity table or the caps
    """
    config = config or DEFAULT_CONFIG
    expected = validate_spec(spec, config)

    if cache is not None:
        cached = cache.load(spec)
        if cached is not None:
            logger.info(f"Loaded {spec.label} from cache ({cached.v} vertices)")
            return cached

    start_time = time.perf_counter()
    vertices, form = vertex_array(
        spec.family, spec.q, spec.r, spec.eps, spec.model, spec.part, spec.modulus
    )
    v = len(vertices)
    if v != expected.v:
        logger.warning(f"{spec.label}: enumerated {v} vertices, formula gives {expected.v}")
    logger.info(f"Building {spec.label}: {v} vertices")

    if isinstance(form, HermitianSpaceSpec):
        point_values = form.h_values(vertices[:, 0], vertices[:, 1])
        fill = _hermitian_block
    else:
        point_values = form.values(vertices)
        fill = _orthogonal_block

    words = (v + 63) // 64
    packed = np.zeros((v, words), dtype=np.uint64)
    starts = range(0, v, config.row_block)
    for start in tqdm(starts, desc=spec.label, disable=not config.show_progress, leave=False):
        stop = min(start + config.row_block, v)
        rows = np.arange(start, stop)
        adj = fill(spec, form, vertices[start:stop], vertices, point_values, rows)
        adj[np.arange(stop - start), rows] = False
        packed[start:stop] = pack_rows(adj, v)

    graph = Graph(spec, vertices, packed, form, time.perf_counter() - start_time)
    logger.info(f"Built {spec.label} in {graph.build_seconds:.2f}s")
    if cache is not None:
        cache.store(graph)
    return graph


# ---------------------------------------------------------------------------
# Measurement
# ---------------------------------------------------------------------------


def common_neighbour_block(g: Graph, start: int, stop: int) -> np.ndarray:
    """|N(i) & N(j)| for i in [start, stop) and every j."""
    rows = g.packed[start:stop]
    return np.bitwise_count(rows[:, None, :] & g.packed[None, :, :]).sum(axis=2, dtype=np.int64)


def measure_params(g: Graph) -> SrgParams:
    """Count v, k, lambda, mu exhaustively.

    Raises:
        NotRegular: degrees differ
        NotStronglyRegular: common-neighbour counts differ within adjacent or
            non-adjacent pairs; carries the first offending pair in row-major order
    """
    v = g.v
    degrees = g.degrees()
    k = int(degrees[0])
    irregular = np.flatnonzero(degrees != k)
    if irregular.size:
        i = int(irregular[0])
        raise NotRegular(i, int(degrees[i]), k)

    established: dict[bool, int] = {}
    block = max(1, WORD_BUDGET // max(1, v * g.packed.shape[1]))
    for start in range(0, v, block):
        stop = min(start + block, v)
        common = common_neighbour_block(g, start, stop)
        adj = unpack_rows(g.packed[start:stop], v)
        upper = np.arange(v)[None, :] > np.arange(start, stop)[:, None]
        for adjacent in (True, False):
            sel = upper & (adj == adjacent)
            values = common[sel]
            if values.size == 0:
                continue
            expected = established.setdefault(adjacent, int(values[0]))
            bad = values != expected
            if bad.any():
                first = int(np.argmax(bad))
                i, j = np.argwhere(sel)[first]
                raise NotStronglyRegular(
                    (int(start + i), int(j)), int(values[first]), expected, adjacent
                )

    lam = established.get(True, 0)
    mu = established.get(False, 0)
    logger.debug(f"Measured {g.spec.label}: srg({v},{k},{lam},{mu})")
    return SrgParams.from_counts(v, k, lam, mu)


def graph_summary(g: Graph, measured: SrgParams, expected: SrgParams) -> dict:
    """JSON graph summary."""
    return {
        "family": g.spec.family.value,
        "q": g.spec.q,
        "r": g.spec.r,
        "eps": g.spec.eps,
        "model": g.spec.model.value,
        "part": g.spec.part,
        "v": measured.v,
        "k": measured.k,
        "lambda": measured.lam,
        "mu": measured.mu,
        "e_plus": measured.e_plus,
        "e_minus": measured.e_minus,
        "expected": expected.to_dict(),
        "matches_expected": measured.as_tuple() == expected.as_tuple(),
        "build_seconds": round(g.build_seconds, 3),
    }


# ---------------------------------------------------------------------------
# Geometric oracles
# ---------------------------------------------------------------------------


def _line_points(field: FieldSpec, x: np.ndarray, y: np.ndarray, scalars: np.ndarray) -> list:
    """Representatives x + s y (s in scalars) and y of the lines <x, y>, pairwise aligned."""
    points = [fadd(field, x, fmul(field, np.asarray(s), y)) for s in scalars]
    points.append(np.asarray(y))
    return points


def line_singular_counts(
    form: QuadraticFormSpec | HermitianSpaceSpec, xs: np.ndarray, ys: np.ndarray
) -> np.ndarray:
    """Number of singular (isotropic) points on each line <xs[n], ys[n]>.

    Every point of the line is enumerated and evaluated; used as the geometric
    counterpart of the algebraic tangency criteria.
    """
    xs = np.asarray(xs, dtype=np.int64)
    ys = np.asarray(ys, dtype=np.int64)
    if isinstance(form, HermitianSpaceSpec):
        big = form.big_field
        scalars = form.emb_mid.table
        counts = np.zeros(len(xs), dtype=np.int64)
        for point in _line_points(big, xs, ys, scalars):
            counts += form.h_values(point[:, 0], point[:, 1]) == 0
        return counts
    field = form.field
    scalars = np.arange(field.order)
    counts = np.zeros(len(xs), dtype=np.int64)
    for point in _line_points(field, xs, ys, scalars):
        counts += form.values(point) == 0
    return counts


def tangent_points_on_line(
    form: QuadraticFormSpec | HermitianSpaceSpec, p1: ProjectivePoint, p2: ProjectivePoint
) -> int:
    """Singular (resp. isotropic) points on the line through two distinct points."""
    x = np.array([p1.rep.coords], dtype=np.int64)
    y = np.array([p2.rep.coords], dtype=np.int64)
    return int(line_singular_counts(form, x, y)[0])


def complement_relation(g: Graph, other: Graph) -> bool:
    """other's adjacency is the off-diagonal complement of g's on the same vertex order."""
    if g.v != other.v or not np.array_equal(g.vertices, other.vertices):
        return False
    expected = ~g.adjacency()
    np.fill_diagonal(expected, False)
    return bool(np.array_equal(expected, other.adjacency()))
