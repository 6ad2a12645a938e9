"""Vertex subsets with provenance, set algebra, and the set-file format.

Set file layout:

    # graph: no-even2 q=2 r=2 eps=-1
    # meta: {"expected": ..., "model": "standard", "part": 1, "provenance": ...}
    ([1], [0], [0], [0])
    ...

The meta line is a single sorted-key JSON object; vertex lines use the
geometry text format, in increasing vertex order.
"""

import json
import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any

import numpy as np

from srglab.exceptions import (
    MixedTypes,
    NotDisjoint,
    NotNested,
    UnsupportedParameters,
    WrongFamily,
)
from srglab.geometry import format_coords, parse_coords
from srglab.srg import Graph, GraphSpec

logger = logging.getLogger(__name__)


class SetType(Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    DEGENERATE = "degenerate"
    NOT_INTRIGUING = "not_intriguing"


@dataclass(frozen=True)
class Expected:
    """Expected intersection numbers.

    h1, h2 and set_type decide pass/fail. printed holds the tabulated (h1, h2)
    when it was recorded separately and may differ.
    """

    h1: int
    h2: int
    set_type: SetType
    source: str = ""
    printed: tuple[int, int] | None = None

    @property
    def matches_printed(self) -> bool | None:
        if self.printed is None:
            return None
        return self.printed == (self.h1, self.h2)

    def to_dict(self) -> dict[str, Any]:
        return {
            "h1": self.h1,
            "h2": self.h2,
            "type": self.set_type.value,
            "source": self.source,
            "printed": list(self.printed) if self.printed is not None else None,
            "matches_printed": self.matches_printed,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "Expected":
        printed = d.get("printed")
        return cls(
            h1=int(d["h1"]),
            h2=int(d["h2"]),
            set_type=SetType(d["type"]),
            source=d.get("source", ""),
            printed=tuple(printed) if printed is not None else None,
        )


@dataclass
class Provenance:
    """Which construction produced a set, with its parameters."""

    kind: str
    params: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, **self.params}

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "Provenance":
        d = dict(d)
        kind = d.pop("kind", "file")
        return cls(kind, d)

    def __str__(self) -> str:
        args = ", ".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.kind}({args})"


@dataclass
class VertexSet:
    """An ordered subset of a graph's vertex indices.

    notes carries construction diagnostics, such as an orbit count off its
    closed form, into the reports and the tables output.
    """

    spec: GraphSpec
    v: int
    indices: np.ndarray
    provenance: Provenance
    expected: Expected | None = None
    trivial: bool = False
    notes: list[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.indices = np.asarray(self.indices, dtype=np.int64)
        if self.indices.ndim != 1:
            raise UnsupportedParameters("Vertex indices must be a flat sequence")
        if self.indices.size:
            if np.any(np.diff(self.indices) <= 0):
                raise UnsupportedParameters("Vertex indices must be strictly increasing")
            if self.indices[0] < 0 or self.indices[-1] >= self.v:
                raise UnsupportedParameters(f"Vertex indices must lie in [0, {self.v})")
        if not self.trivial and self.indices.size in (0, self.v):
            raise UnsupportedParameters(f"{self.provenance} is empty or the whole vertex set")

    @classmethod
    def from_mask(cls, g: Graph, mask: np.ndarray, provenance: Provenance, **kwargs) -> "VertexSet":
        return cls(g.spec, g.v, np.flatnonzero(mask), provenance, **kwargs)

    @property
    def size(self) -> int:
        return int(self.indices.size)

    def membership(self) -> np.ndarray:
        mask = np.zeros(self.v, dtype=bool)
        mask[self.indices] = True
        return mask

    def with_expected(self, expected: Expected | None) -> "VertexSet":
        return VertexSet(
            self.spec, self.v, self.indices, self.provenance, expected, self.trivial, list(self.notes)
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "size": self.size,
            "provenance": self.provenance.to_dict(),
            "expected": self.expected.to_dict() if self.expected else None,
            "notes": self.notes,
        }

    def __len__(self) -> int:
        return self.size

    def __repr__(self) -> str:
        return f"VertexSet({self.provenance}, size={self.size})"


# ---------------------------------------------------------------------------
# Set algebra
# ---------------------------------------------------------------------------


def _same_graph(*sets: VertexSet) -> None:
    first = sets[0]
    for other in sets[1:]:
        if other.spec != first.spec or other.v != first.v:
            raise WrongFamily(f"Sets over {first.spec.label} and {other.spec.label}")


def _merged_notes(*sets: VertexSet) -> list[str]:
    return list(dict.fromkeys(note for s in sets for note in s.notes))


def complement(y: VertexSet, k: int | None = None, expected: Expected | None = None) -> VertexSet:
    """X minus Y.

    With k given and Y carrying expected values, the complement's expected
    values are (k - h2, k - h1) of the same type.
    """
    mask = ~y.membership()
    if expected is None and k is not None and y.expected is not None:
        e = y.expected
        expected = Expected(k - e.h2, k - e.h1, e.set_type, source="complement")
    return VertexSet(
        y.spec,
        y.v,
        np.flatnonzero(mask),
        Provenance("complement", {"of": str(y.provenance)}),
        expected,
        notes=list(y.notes),
    )


def difference(outer: VertexSet, inner: VertexSet, expected: Expected | None = None) -> VertexSet:
    """outer minus inner, for inner contained in outer.

    Raises:
        NotNested: inner is not a subset of outer
        MixedTypes: both carry expected values of different types
    """
    _same_graph(outer, inner)
    outer_mask = outer.membership()
    if not np.all(outer_mask[inner.indices]):
        raise NotNested(f"{inner.provenance} is not contained in {outer.provenance}")
    if outer.expected and inner.expected:
        if outer.expected.set_type != inner.expected.set_type:
            raise MixedTypes(
                f"{outer.expected.set_type.value} and {inner.expected.set_type.value} sets"
            )
        if expected is None:
            expected = Expected(
                outer.expected.h1 - inner.expected.h2,
                outer.expected.h2 - inner.expected.h2,
                outer.expected.set_type,
                source="difference",
            )
    outer_mask[inner.indices] = False
    return VertexSet(
        outer.spec,
        outer.v,
        np.flatnonzero(outer_mask),
        Provenance("difference", {"outer": str(outer.provenance), "inner": str(inner.provenance)}),
        expected,
        notes=_merged_notes(outer, inner),
    )


def disjoint_union(*sets: VertexSet, provenance: Provenance | None = None) -> VertexSet:
    """Union of pairwise disjoint sets of one type.

    Expected values add: h1 = h1_i + sum_{j != i} h2_j, h2 = sum h2_j.

    Raises:
        NotDisjoint: two operands share a vertex
        MixedTypes: operands carry expected values of different types
    """
    if not sets:
        raise UnsupportedParameters("disjoint_union needs at least one set")
    _same_graph(*sets)
    counts = np.zeros(sets[0].v, dtype=np.int64)
    for s in sets:
        counts[s.indices] += 1
    if np.any(counts > 1):
        raise NotDisjoint(f"Vertex {int(np.argmax(counts > 1))} lies in two operands")

    expected = None
    if all(s.expected for s in sets):
        types = {s.expected.set_type for s in sets}
        if len(types) > 1:
            raise MixedTypes(f"Cannot unite sets of types {sorted(t.value for t in types)}")
        h2 = sum(s.expected.h2 for s in sets)
        first = sets[0].expected
        expected = Expected(first.h1 + h2 - first.h2, h2, first.set_type, source="union")
    elif any(s.expected for s in sets):
        raise MixedTypes("Cannot unite sets with and without expected types")

    provenance = provenance or Provenance("union", {"of": [str(s.provenance) for s in sets]})
    return VertexSet(
        sets[0].spec,
        sets[0].v,
        np.flatnonzero(counts),
        provenance,
        expected,
        notes=_merged_notes(*sets),
    )


def table_set_algebra(op: str, *sets: VertexSet, k: int | None = None) -> VertexSet:
    """Dispatch to complement, difference or disjoint_union."""
    if op == "complement":
        (y,) = sets
        return complement(y, k)
    if op == "difference":
        outer, inner = sets
        return difference(outer, inner)
    if op == "union":
        return disjoint_union(*sets)
    raise UnsupportedParameters(f"Unknown set operation: {op}")


# ---------------------------------------------------------------------------
# Set files
# ---------------------------------------------------------------------------

_HEADER = re.compile(
    r"^# graph: (?P<family>[a-z0-9-]+) q=(?P<q>\d+) r=(?P<r>\d+)(?: eps=(?P<eps>[+-]?1))?\s*$"
)


def format_header(spec: GraphSpec) -> str:
    header = f"# graph: {spec.family.value} q={spec.q} r={spec.r}"
    if spec.eps is not None:
        header += f" eps={spec.eps:+d}"
    return header


def render_set_file(vset: VertexSet, g: Graph) -> str:
    meta = {
        "model": vset.spec.model.value,
        "part": vset.spec.part,
        "modulus": list(vset.spec.modulus) if vset.spec.modulus is not None else None,
        "provenance": vset.provenance.to_dict(),
        "expected": vset.expected.to_dict() if vset.expected else None,
    }
    lines = [format_header(vset.spec), "# meta: " + json.dumps(meta, sort_keys=True)]
    lines.extend(g.label(int(i)) for i in vset.indices)
    return "\n".join(lines) + "\n"


def write_set_file(path: Path | str, vset: VertexSet, g: Graph) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(render_set_file(vset, g))
    logger.info(f"Saved {vset.size} vertices to {path}")
    return path


def read_set_header(path: Path | str) -> tuple[GraphSpec, dict[str, Any]]:
    """Graph spec and meta record of a set file."""
    lines = Path(path).read_text().splitlines()
    if not lines:
        raise UnsupportedParameters(f"{path} is empty")
    match = _HEADER.match(lines[0])
    if match is None:
        raise UnsupportedParameters(f"{path}: malformed header {lines[0]!r}")
    meta: dict[str, Any] = {}
    if len(lines) > 1 and lines[1].startswith("# meta: "):
        meta = json.loads(lines[1][len("# meta: ") :])
    eps = int(match["eps"]) if match["eps"] else None
    spec = GraphSpec(
        match["family"],
        int(match["q"]),
        int(match["r"]),
        eps,
        meta.get("model", "standard"),
        int(meta.get("part", 1)),
        tuple(meta["modulus"]) if meta.get("modulus") else None,
    )
    return spec, meta


def read_set_file(path: Path | str, g: Graph) -> VertexSet:
    """Load a set file against a built graph.

    Raises:
        WrongFamily: the header names a different graph
        UnsupportedParameters: a line is not a vertex of g
    """
    spec, meta = read_set_header(path)
    if spec != g.spec:
        raise WrongFamily(f"{path} is over {spec.label}, graph is {g.spec.label}")
    rows = []
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        rows.append(parse_coords(line, g.field))
    if rows:
        indices = g.index_of(np.array(rows, dtype=np.int64))
    else:
        indices = np.zeros(0, dtype=np.int64)
    if np.any(indices < 0):
        bad = rows[int(np.argmax(indices < 0))]
        label = format_coords(g.field, bad)
        raise UnsupportedParameters(f"{path}: {label} is not a vertex of {g.spec.label}")
    provenance = Provenance.from_dict(meta.get("provenance") or {"kind": "file"})
    expected = Expected.from_dict(meta["expected"]) if meta.get("expected") else None
    indices = np.sort(indices)
    trivial = indices.size in (0, g.v)
    return VertexSet(g.spec, g.v, indices, provenance, expected, trivial)
