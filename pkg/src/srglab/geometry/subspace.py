"""Subspaces of GF(q)^dim: row reduction, perps and totally singular checks."""

from dataclasses import dataclass
from itertools import combinations, product
from typing import TYPE_CHECKING, Union

import numpy as np

from srglab.exceptions import DimensionMismatch
from srglab.gf import FieldSpec
from srglab.geometry.forms import QuadraticFormSpec
from srglab.geometry.matrix import all_vectors, fmatmul

if TYPE_CHECKING:
    from srglab.geometry.points import ProjectivePoint, Vector

Row = tuple[int, ...]


def rref(field: FieldSpec, rows: list[list[int]] | list[Row]) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    mat = [list(row) for row in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots: list[int] = []
    lead = 0
    for col in range(ncols):
        pivot_row = next((i for i in range(lead, len(mat)) if mat[i][col]), None)
        if pivot_row is None:
            continue
        mat[lead], mat[pivot_row] = mat[pivot_row], mat[lead]
        inv = field.inv(mat[lead][col])
        mat[lead] = [field.mul(inv, c) for c in mat[lead]]
        for i in range(len(mat)):
            if i != lead and mat[i][col]:
                factor = mat[i][col]
                mat[i] = [
                    field.sub(a, field.mul(factor, b))
                    for a, b in zip(mat[i], mat[lead], strict=True)
                ]
        pivots.append(col)
        lead += 1
        if lead == len(mat):
            break
    return mat[:lead], pivots


def rank(field: FieldSpec, rows: list[list[int]] | list[Row]) -> int:
    return len(rref(field, rows)[1])


def nullspace(field: FieldSpec, equations: np.ndarray | list[list[int]]) -> list[Row]:
    """Basis of {x : equations @ x^T = 0}."""
    eqs = [[int(c) for c in row] for row in np.asarray(equations)]
    if not eqs:
        return []
    ncols = len(eqs[0])
    reduced, pivots = rref(field, eqs)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [0] * ncols
        vec[f] = 1
        for row, pc in zip(reduced, pivots, strict=True):
            vec[pc] = field.neg(row[f])
        basis.append(tuple(vec))
    return basis


@dataclass(frozen=True)
class Subspace:
    """Subspace spanned by linearly independent basis rows."""

    field: FieldSpec
    dim: int
    basis: tuple[Row, ...]

    def __post_init__(self) -> None:
        if any(len(b) != self.dim for b in self.basis):
            raise DimensionMismatch(f"Basis vectors must have length {self.dim}")
        if rank(self.field, list(self.basis)) != len(self.basis):
            raise DimensionMismatch("Basis vectors are linearly dependent")

    @classmethod
    def span(cls, field: FieldSpec, dim: int, vectors: list[Row]) -> "Subspace":
        reduced, _ = rref(field, list(vectors)) if vectors else ([], [])
        return cls(field, dim, tuple(tuple(row) for row in reduced))

    @property
    def dim_sub(self) -> int:
        return len(self.basis)

    @property
    def canonical_basis(self) -> tuple[Row, ...]:
        reduced, _ = rref(self.field, list(self.basis))
        return tuple(tuple(row) for row in reduced)

    def vectors(self) -> np.ndarray:
        """All q^dim_sub vectors of the subspace as index rows."""
        if not self.basis:
            return np.zeros((1, self.dim), dtype=np.int64)
        coeffs = all_vectors(self.field, self.dim_sub)
        return fmatmul(self.field, coeffs, np.array(self.basis, dtype=np.int64))

    def contains(self, vec: Row) -> bool:
        return rank(self.field, list(self.basis) + [tuple(vec)]) == self.dim_sub

    def same_span(self, other: "Subspace") -> bool:
        return self.canonical_basis == other.canonical_basis

    def __len__(self) -> int:
        return self.dim_sub


def coordinate_subspace(field: FieldSpec, dim: int, positions: list[int]) -> Subspace:
    """Span of the unit vectors e_i for i in positions."""
    basis = []
    for i in positions:
        vec = [0] * dim
        vec[i] = 1
        basis.append(tuple(vec))
    return Subspace(field, dim, tuple(basis))


def _as_subspace(form: QuadraticFormSpec, s: Union[Subspace, "ProjectivePoint", "Vector"]) -> Subspace:
    if isinstance(s, Subspace):
        return s
    rep = getattr(s, "rep", s)
    return Subspace(form.field, form.dim, (tuple(rep.coords),))


def perp_basis(form: QuadraticFormSpec, s: Union[Subspace, "ProjectivePoint"]) -> Subspace:
    """S^perp with respect to the polar form.

    Raises:
        DegenerateForm: the form is degenerate
    """
    form.check_nondegenerate()
    sub = _as_subspace(form, s)
    if not sub.basis:
        return coordinate_subspace(form.field, form.dim, list(range(form.dim)))
    equations = fmatmul(form.field, np.array(sub.basis, dtype=np.int64), form.polar_matrix)
    return Subspace(form.field, form.dim, tuple(nullspace(form.field, equations)))


def is_totally_singular(form: QuadraticFormSpec, s: Subspace, enumerate_all: bool = False) -> bool:
    """Q vanishes on S.

    The default criterion checks Q on the basis and B on basis pairs;
    enumerate_all evaluates Q on every vector of S instead.
    """
    if enumerate_all:
        return bool(np.all(form.values(s.vectors()) == 0))
    if not s.basis:
        return True
    basis = np.array(s.basis, dtype=np.int64)
    if np.any(form.values(basis) != 0):
        return False
    gram = form.polar(basis, basis)
    return all(gram[i, j] == 0 for i, j in combinations(range(len(s.basis)), 2))


def all_subspaces(field: FieldSpec, dim: int, k: int) -> list[Subspace]:
    """Every k-dimensional subspace, one per reduced echelon basis."""
    out = []
    for pivots in combinations(range(dim), k):
        # Free entries: positions right of each pivot that are not pivot columns.
        slots = [
            (i, c)
            for i, pc in enumerate(pivots)
            for c in range(pc + 1, dim)
            if c not in pivots
        ]
        for values in product(range(field.order), repeat=len(slots)):
            rows = [[0] * dim for _ in range(k)]
            for i, pc in enumerate(pivots):
                rows[i][pc] = 1
            for (i, c), value in zip(slots, values, strict=True):
                rows[i][c] = value
            out.append(Subspace(field, dim, tuple(tuple(row) for row in rows)))
    return out

