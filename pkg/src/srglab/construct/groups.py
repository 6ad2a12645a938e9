"""The groups K, L and G and their orbits on graph vertices.

K acts on the split parabolic space F_q^r x F_q^r x F_q (Q = x y^T + z^2):

    (x, y, z) A_{u,S} = (x, x (a u^T u + S) + y + z u, 2a x u^T + z),   4a + 1 = 0

L acts on the split hyperbolic space F_q^r x F_q^r (Q = x y^T):

    (x, y) -> (x, x S + y)

G acts on GF(q^2r)^2 by sigma_c (u, v) = (u, v + sum_i c_i u^(q^2i)), with
c_0 in GF(q^r) and c_{r-i} = -c_i^(q^(r-2i)).

S is always alternating (S^T = -S, zero diagonal).
"""

import logging
from collections.abc import Iterator
from dataclasses import dataclass
from enum import Enum
from functools import cached_property, lru_cache
from itertools import product

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from srglab.construct.vertex_set import Expected, Provenance, SetType, VertexSet
from srglab.exceptions import (
    DimensionMismatch,
    EvenCharacteristic,
    UnsupportedParameters,
    WrongFamily,
)
from srglab.geometry import (
    Family,
    FormModel,
    HermitianSpaceSpec,
    QuadraticFormSpec,
    format_coords,
    normalize_rows,
    normalize_rows_by,
)
from srglab.geometry.matrix import fadd, fmatmul, fmul, fneg, fsub
from srglab.gf import FieldSpec, field_create, subfield_embedding
from srglab.srg import Graph

logger = logging.getLogger(__name__)


class GroupKind(Enum):
    K = "K"
    L = "L"
    G = "G"


def k_constant(field: FieldSpec) -> int:
    """a = -(4^-1), the solution of 4a + 1 = 0."""
    if field.p == 2:
        raise EvenCharacteristic("4a + 1 = 0 has no solution in characteristic 2")
    return field.neg(field.inv(field.constant(4)))


def _as_matrix(rows, r: int) -> np.ndarray:
    return np.array(rows, dtype=np.int64).reshape(r, r)


def _check_alternating(field: FieldSpec, S: np.ndarray) -> None:
    if np.any(np.diagonal(S) != 0) or np.any(fadd(field, S, S.T) != 0):
        raise UnsupportedParameters("S must be alternating (S^T = -S, zero diagonal)")


def _freeze(mat: np.ndarray) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(c) for c in row) for row in mat)


def _outer(field: FieldSpec, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    return fmul(field, u[:, None], v[None, :])


# ---------------------------------------------------------------------------
# K
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroupElementK:
    """A_{u,S} in K."""

    field: FieldSpec
    u: tuple[int, ...]
    S: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        r = len(self.u)
        if len(self.S) != r or any(len(row) != r for row in self.S):
            raise DimensionMismatch(f"S must be {r}x{r}")
        k_constant(self.field)
        _check_alternating(self.field, self.S_matrix)

    @property
    def r(self) -> int:
        return len(self.u)

    @cached_property
    def a(self) -> int:
        return k_constant(self.field)

    @cached_property
    def u_vector(self) -> np.ndarray:
        return np.array(self.u, dtype=np.int64)

    @cached_property
    def S_matrix(self) -> np.ndarray:
        return _as_matrix(self.S, len(self.u))

    @classmethod
    def identity(cls, field: FieldSpec, r: int) -> "GroupElementK":
        return cls(field, (0,) * r, ((0,) * r,) * r)

    @cached_property
    def matrix(self) -> np.ndarray:
        f, r, a = self.field, self.r, self.a
        u = self.u_vector
        n = 2 * r + 1
        mat = np.zeros((n, n), dtype=np.int64)
        mat[np.arange(r), np.arange(r)] = 1
        mat[np.arange(r, 2 * r), np.arange(r, 2 * r)] = 1
        mat[:r, r : 2 * r] = fadd(f, fmul(f, a, _outer(f, u, u)), self.S_matrix)
        mat[:r, 2 * r] = fmul(f, f.add(a, a), u)
        mat[2 * r, r : 2 * r] = u
        mat[2 * r, 2 * r] = 1
        return mat

    def act(self, rows: np.ndarray) -> np.ndarray:
        return fmatmul(self.field, np.asarray(rows, dtype=np.int64), self.matrix)

    def compose(self, other: "GroupElementK") -> "GroupElementK":
        """self then other: A_{u,S} A_{v,T} = A_{u+v, S+T+a(u^T v - v^T u)}."""
        f = self.field
        u, v = self.u_vector, other.u_vector
        skew = fsub(f, _outer(f, u, v), _outer(f, v, u))
        S = fadd(f, fadd(f, self.S_matrix, other.S_matrix), fmul(f, self.a, skew))
        return GroupElementK(f, tuple(int(c) for c in fadd(f, u, v)), _freeze(S))

    def inverse(self) -> "GroupElementK":
        f = self.field
        return GroupElementK(
            f, tuple(int(c) for c in fneg(f, self.u_vector)), _freeze(fneg(f, self.S_matrix))
        )

    @classmethod
    def from_matrix(cls, field: FieldSpec, r: int, mat: np.ndarray) -> "GroupElementK":
        """Recover A_{u,S} from its matrix.

        Raises:
            UnsupportedParameters: mat does not have the shape of an element of K
        """
        mat = np.asarray(mat, dtype=np.int64)
        if mat.shape != (2 * r + 1, 2 * r + 1):
            raise DimensionMismatch(f"Expected a {2 * r + 1}x{2 * r + 1} matrix")
        u = mat[2 * r, r : 2 * r]
        S = fsub(field, mat[:r, r : 2 * r], fmul(field, k_constant(field), _outer(field, u, u)))
        try:
            element = cls(field, tuple(int(c) for c in u), _freeze(S))
        except UnsupportedParameters as exc:
            raise UnsupportedParameters(f"Matrix is not in K: {exc}") from exc
        if not np.array_equal(element.matrix, mat):
            raise UnsupportedParameters("Matrix is not in K")
        return element


def k_generators(field: FieldSpec, r: int) -> list[GroupElementK]:
    """A_{c e_i, 0} and A_{0, c (E_ij - E_ji)} for c over an F_p-basis of F_q."""
    basis = [field.p**j for j in range(field.n)]
    zero_S = ((0,) * r,) * r
    gens = []
    for c in basis:
        for i in range(r):
            u = [0] * r
            u[i] = c
            gens.append(GroupElementK(field, tuple(u), zero_S))
    for c in basis:
        for i in range(r):
            for j in range(i + 1, r):
                S = np.zeros((r, r), dtype=np.int64)
                S[i, j] = c
                S[j, i] = field.neg(c)
                gens.append(GroupElementK(field, (0,) * r, _freeze(S)))
    return gens


def alternating_matrices(field: FieldSpec, r: int) -> Iterator[np.ndarray]:
    slots = [(i, j) for i in range(r) for j in range(i + 1, r)]
    for values in product(range(field.order), repeat=len(slots)):
        S = np.zeros((r, r), dtype=np.int64)
        for (i, j), c in zip(slots, values, strict=True):
            S[i, j] = c
            S[j, i] = field.neg(c)
        yield S


def k_elements(field: FieldSpec, r: int) -> Iterator[GroupElementK]:
    """Every element of K (q^r q^(r(r-1)/2) of them)."""
    for u in product(range(field.order), repeat=r):
        for S in alternating_matrices(field, r):
            yield GroupElementK(field, tuple(u), _freeze(S))


# ---------------------------------------------------------------------------
# L
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroupElementL:
    """[[I, S], [0, I]] in L."""

    field: FieldSpec
    S: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        r = len(self.S)
        if any(len(row) != r for row in self.S):
            raise DimensionMismatch(f"S must be {r}x{r}")
        _check_alternating(self.field, self.S_matrix)

    @property
    def r(self) -> int:
        return len(self.S)

    @cached_property
    def S_matrix(self) -> np.ndarray:
        return _as_matrix(self.S, len(self.S))

    @cached_property
    def matrix(self) -> np.ndarray:
        r = self.r
        mat = np.eye(2 * r, dtype=np.int64)
        mat[:r, r:] = self.S_matrix
        return mat

    def act(self, rows: np.ndarray) -> np.ndarray:
        return fmatmul(self.field, np.asarray(rows, dtype=np.int64), self.matrix)

    def compose(self, other: "GroupElementL") -> "GroupElementL":
        return GroupElementL(self.field, _freeze(fadd(self.field, self.S_matrix, other.S_matrix)))

    def inverse(self) -> "GroupElementL":
        return GroupElementL(self.field, _freeze(fneg(self.field, self.S_matrix)))


def l_generators(field: FieldSpec, r: int) -> list[GroupElementL]:
    gens = []
    for c in (field.p**j for j in range(field.n)):
        for i in range(r):
            for j in range(i + 1, r):
                S = np.zeros((r, r), dtype=np.int64)
                S[i, j] = c
                S[j, i] = field.neg(c)
                gens.append(GroupElementL(field, _freeze(S)))
    return gens


def l_elements(field: FieldSpec, r: int) -> Iterator[GroupElementL]:
    for S in alternating_matrices(field, r):
        yield GroupElementL(field, _freeze(S))


# ---------------------------------------------------------------------------
# G
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroupElementG:
    """sigma_{c_0, ..., c_{r-1}} in G; c holds big-field indices."""

    space: HermitianSpaceSpec
    c: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.c) != self.space.r:
            raise DimensionMismatch(f"G needs {self.space.r} coefficients, got {len(self.c)}")
        if not g_admissible(self.space, self.c):
            raise UnsupportedParameters(f"Coefficients {self.c} violate the G constraints")

    def act(self, rows: np.ndarray) -> np.ndarray:
        """Images of (u, v) rows, as big-field indices."""
        space = self.space
        big = space.big_field
        rows = np.asarray(rows, dtype=np.int64)
        u, v = rows[:, 0], rows[:, 1]
        shift = np.zeros_like(v)
        for i, ci in enumerate(self.c):
            if ci:
                u_pow = big.frobenius_table(2 * space.m * i)[u]
                shift = big.add_table[shift, big.mul_table[ci, u_pow]]
        return np.stack([u, big.add_table[v, shift]], axis=1).astype(np.int64)

    def compose(self, other: "GroupElementG") -> "GroupElementG":
        big = self.space.big_field
        summed = tuple(big.add(a, b) for a, b in zip(self.c, other.c, strict=True))
        return GroupElementG(self.space, summed)

    def inverse(self) -> "GroupElementG":
        big = self.space.big_field
        return GroupElementG(self.space, tuple(big.neg(a) for a in self.c))


def g_admissible(space: HermitianSpaceSpec, c: tuple[int, ...]) -> bool:
    """c_0^(q^r) = c_0 and c_i + c_{r-i}^(q^(r+2i)) = 0 for i = 1..r-1."""
    big = space.big_field
    m, r = space.m, space.r
    degree = 2 * m * r
    if int(space.conj_table[c[0]]) != c[0]:
        return False
    for i in range(1, r):
        twisted = big.frobenius(c[r - i], (m * (r + 2 * i)) % degree)
        if big.add(c[i], twisted) != 0:
            return False
    return True


def _paired(space: HermitianSpaceSpec, i: int, ci: int) -> tuple[int, int]:
    """(c_i, c_{r-i}) for a free c_i, 1 <= i <= (r-1)/2."""
    big = space.big_field
    return ci, big.neg(big.frobenius(ci, space.m * (space.r - 2 * i)))


def _fixed_field_elements(space: HermitianSpaceSpec) -> np.ndarray:
    """Big-field indices of GF(q^r)."""
    sub = field_create(space.big_field.p, space.m * space.r)
    return subfield_embedding(sub, space.big_field).table


def g_generators(space: HermitianSpaceSpec) -> list[GroupElementG]:
    """F_p-basis of G: one coefficient slot at a time."""
    big = space.big_field
    r = space.r
    sub = field_create(big.p, space.m * space.r)
    emb = subfield_embedding(sub, big)
    gens = []
    for j in range(sub.n):
        c = [0] * r
        c[0] = emb(big.p**j)
        gens.append(GroupElementG(space, tuple(c)))
    for i in range(1, (r - 1) // 2 + 1):
        for j in range(big.n):
            c = [0] * r
            c[i], c[r - i] = _paired(space, i, big.p**j)
            gens.append(GroupElementG(space, tuple(c)))
    return gens


def g_elements(space: HermitianSpaceSpec) -> Iterator[GroupElementG]:
    """Every element of G (q^r q^(2r (r-1)/2) of them)."""
    r = space.r
    free = range(1, (r - 1) // 2 + 1)
    c0_values = _fixed_field_elements(space)
    for c0 in c0_values:
        for values in product(range(space.big_field.order), repeat=len(free)):
            c = [0] * r
            c[0] = int(c0)
            for i, ci in zip(free, values, strict=True):
                c[i], c[r - i] = _paired(space, i, ci)
            yield GroupElementG(space, tuple(c))


@lru_cache(maxsize=8)
def power_index(space: HermitianSpaceSpec) -> np.ndarray:
    """j with omega^j = x for every nonzero big-field index x (omega primitive).

    Filled by multiplying out successive powers of omega.
    """
    big = space.big_field
    omega = big.primitive
    index = np.full(big.order, -1, dtype=np.int64)
    x = 1
    for j in range(big.order - 1):
        index[x] = j
        x = int(big.mul_table[x, omega])
    return index


def omega_class_count(space: HermitianSpaceSpec) -> int:
    """e = (q^2r - 1) / (q^2 - 1)."""
    q, r = space.q, space.r
    return (q ** (2 * r) - 1) // (q * q - 1)


def g_orbit_key(space: HermitianSpaceSpec, row: np.ndarray) -> tuple[int, int]:
    """(k, i) of a vertex <(u, v)>: u = omega^k up to GF(q^2)^*, i = h((omega^k, v'))."""
    big = space.big_field
    e = omega_class_count(space)
    u, v = int(row[0]), int(row[1])
    log_u = int(power_index(space)[u])
    k = log_u % e
    scale = big.pow(big.primitive, (k - log_u) % (big.order - 1))
    i = int(space.h_values(np.array([big.mul(scale, u)]), np.array([big.mul(scale, v)]))[0])
    return k, space.emb_base.preimage(i)


# ---------------------------------------------------------------------------
# Orbits
# ---------------------------------------------------------------------------

_GROUP_FAMILIES = {
    GroupKind.K: ((Family.NO_PERP, Family.NO_ODD), FormModel.SPLIT),
    GroupKind.L: ((Family.NO_EVEN3, Family.NO_EVEN2), FormModel.SPLIT),
    GroupKind.G: ((Family.NU,), FormModel.STANDARD),
}


def check_group_family(kind: GroupKind | str, g: Graph) -> GroupKind:
    """Raise WrongFamily unless the group acts on g's coordinate model."""
    kind = GroupKind(kind)
    families, model = _GROUP_FAMILIES[kind]
    if g.spec.family not in families or g.spec.model is not model:
        names = ", ".join(f.value for f in families)
        raise WrongFamily(
            f"{kind.value} acts on {names} with the {model.value} model, not {g.spec.label}"
        )
    return kind


def group_generators(kind: GroupKind, g: Graph) -> list:
    if kind is GroupKind.K:
        return k_generators(g.field, g.spec.r)
    if kind is GroupKind.L:
        return l_generators(g.field, g.spec.r)
    return g_generators(g.form)


def image_indices(g: Graph, element) -> np.ndarray:
    """Vertex index of the image of every vertex under element."""
    images = element.act(g.vertices)
    if isinstance(g.form, HermitianSpaceSpec):
        images = normalize_rows_by(g.form.big_field, images, g.form.mid_scalars)
    else:
        images = normalize_rows(g.field, images)
    idx = g.index_of(images)
    if np.any(idx < 0):
        bad = int(np.argmax(idx < 0))
        raise WrongFamily(f"{element!r} maps vertex {g.label(bad)} outside X of {g.spec.label}")
    return idx


def expected_orbit_shape(kind: GroupKind, g: Graph) -> tuple[int, int]:
    """(number of orbits, orbit size)."""
    q, r, eps = g.spec.q, g.spec.r, g.spec.eps
    if kind is GroupKind.K:
        return (q**r + eps) // 2, q**r
    if kind is GroupKind.L:
        return (q**r - 1) // (q - 1), q ** (r - 1)
    return (q ** (2 * r) - 1) // (q + 1), q ** (2 * r - 1)


def _orbit_expected(kind: GroupKind, g: Graph, first_row: np.ndarray) -> Expected | None:
    q, r, eps = g.spec.q, g.spec.r, g.spec.eps
    family = g.spec.family
    if kind is GroupKind.K and family is Family.NO_PERP:
        set_type = SetType.NEGATIVE if eps == 1 else SetType.POSITIVE
        return Expected((1 - eps) * q ** (r - 1), q ** (r - 1), set_type, source="k_orbit")
    if kind is GroupKind.K and eps == 1 and not np.any(first_row[:r]):
        return Expected(q**r - 1, 2 * q ** (r - 1), SetType.POSITIVE, source="k_orbit")
    if kind is GroupKind.L and family is Family.NO_EVEN3:
        return Expected(0, 3 ** (r - 2), SetType.NEGATIVE, source="l_orbit")
    if kind is GroupKind.L:
        return Expected(2 ** (r - 1) - 1, 2 ** (r - 2), SetType.POSITIVE, source="l_orbit")
    return None


def _orbit_provenance(kind: GroupKind, g: Graph, first: int) -> Provenance:
    row = g.vertices[first]
    if kind is GroupKind.K:
        return Provenance("k_orbit", {"rep": g.label(first)})
    if kind is GroupKind.L:
        return Provenance("l_orbit", {"u": format_coords(g.field, row[: g.spec.r])})
    k, i = g_orbit_key(g.form, row)
    return Provenance("g_orbit", {"k": k, "i": i})


def group_orbits(kind: GroupKind | str, g: Graph) -> list[VertexSet]:
    """Partition X into orbits of K, L or G.

    Orbits are the connected components of the graph joining every vertex to
    its images under the generators; they are ordered by their smallest vertex.

    Raises:
        WrongFamily: the group does not act on g's family and model
    """
    kind = check_group_family(kind, g)
    gens = group_generators(kind, g)
    logger.info(f"{kind.value}-orbits on {g.spec.label}: {len(gens)} generators")

    sources, targets = [], []
    for element in gens:
        sources.append(np.arange(g.v))
        targets.append(image_indices(g, element))
    src = np.concatenate(sources)
    dst = np.concatenate(targets)
    links = coo_matrix((np.ones(len(src), dtype=np.int32), (src, dst)), shape=(g.v, g.v))
    _, labels = connected_components(links, directed=True, connection="weak")

    _, firsts = np.unique(labels, return_index=True)
    orbits = []
    for first in np.sort(firsts):
        members = np.flatnonzero(labels == labels[first])
        orbits.append(
            VertexSet(
                g.spec,
                g.v,
                members,
                _orbit_provenance(kind, g, int(first)),
                _orbit_expected(kind, g, g.vertices[first]),
                trivial=len(members) == g.v,
            )
        )

    count, size = expected_orbit_shape(kind, g)
    sizes = {o.size for o in orbits}
    if len(orbits) != count or sizes != {size}:
        note = (
            f"{kind.value}-orbit shape: {len(orbits)} orbits of sizes {sorted(sizes)}, "
            f"expected {count} of size {size}"
        )
        logger.warning(f"{g.spec.label}: {note}")
        for orbit in orbits:
            orbit.notes.append(note)
    else:
        logger.info(f"{kind.value} on {g.spec.label}: {count} orbits of size {size}")
    return orbits


def is_form_preserved(
    element, form: QuadraticFormSpec | HermitianSpaceSpec, rows: np.ndarray
) -> bool:
    """Q (resp. h) agrees on rows and their images."""
    rows = np.asarray(rows, dtype=np.int64)
    images = element.act(rows)
    if isinstance(form, HermitianSpaceSpec):
        before = form.h_values(rows[:, 0], rows[:, 1])
        after = form.h_values(images[:, 0], images[:, 1])
    else:
        before = form.values(rows)
        after = form.values(images)
    return bool(np.array_equal(before, after))
