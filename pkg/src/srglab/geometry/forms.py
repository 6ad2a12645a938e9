"""Canonical quadratic and hermitian forms for the five graph families.

Quadratic forms are stored by their upper-triangular coefficients c_ij
(i <= j), Q(x) = sum c_ij x_i x_j. Coordinates are 0-based in code.

Standard models:
    parabolic   x_0 x_{2r} + x_1 x_{2r-1} + ... + x_{r-1} x_{r+1} + x_r^2
    hyperbolic  x_0 x_1 + x_2 x_3 + ... + x_{2r-2} x_{2r-1}
    elliptic    x_0 x_1 + ... + x_{2r-4} x_{2r-3} + g(x_{2r-2}, x_{2r-1}),
                g(x, y) = x^2 + x y + delta y^2, delta the first element making g anisotropic

Split models, coordinates (x, y, z) with x, y in GF(q)^r:
    parabolic   x y^T + z^2
    hyperbolic  x y^T

The hermitian family lives on GF(q^2r) x GF(q^2r) with
    H((u1, v1), (u2, v2)) = Tr_{q^2r / q^2}(u1 v2^(q^r) + v1 u2^(q^r))
    h((u, v))             = Tr_{q^2r / q}(u v^(q^r))
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import cached_property, lru_cache
from typing import TYPE_CHECKING

import numpy as np

from srglab.exceptions import (
    DegenerateForm,
    DimensionMismatch,
    UnsupportedParameters,
    WrongField,
)
from srglab.gf import (
    FieldElement,
    FieldSpec,
    SubfieldEmbedding,
    field_create,
    subfield_embedding,
    trace_index,
)
from srglab.gf.field import is_prime
from srglab.geometry.matrix import fadd, fmatmul, fmul, fsub, fsum

if TYPE_CHECKING:
    from srglab.geometry.points import Vector

logger = logging.getLogger(__name__)


class Family(Enum):
    """The five graph families, valued by their CLI names."""

    NO_PERP = "no-perp"
    NO_EVEN3 = "no-even3"
    NO_EVEN2 = "no-even2"
    NO_ODD = "no-odd"
    NU = "nu"

    @classmethod
    def from_name(cls, name: "str | Family") -> "Family":
        if isinstance(name, Family):
            return name
        key = name.strip().lower().replace("_", "-")
        for member in cls:
            if member.value == key:
                return member
        raise UnsupportedParameters(f"Unknown graph family: {name}")

    @property
    def is_orthogonal(self) -> bool:
        return self is not Family.NU

    @property
    def odd_dimension(self) -> bool:
        return self in (Family.NO_PERP, Family.NO_ODD)


class FormModel(Enum):
    STANDARD = "standard"
    SPLIT = "split"


class FormKind(Enum):
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"
    ELLIPTIC = "elliptic"
    HERMITIAN = "hermitian"


def prime_power(q: int) -> tuple[int, int]:
    """(p, m) with q = p^m, or UnsupportedParameters."""
    for p in range(2, q + 1):
        if q % p == 0:
            if not is_prime(p):
                break
            m, rest = 0, q
            while rest % p == 0:
                rest //= p
                m += 1
            if rest == 1:
                return p, m
            break
    raise UnsupportedParameters(f"q = {q} is not a prime power")


def coordinate_degree(family: Family, q: int, r: int) -> tuple[int, int]:
    """(p, n) of the coordinate field GF(p^n): GF(q), or GF(q^2r) for nu."""
    p, m = prime_power(q)
    return p, (2 * m * r if family is Family.NU else m)


def check_family_parameters(family: Family, q: int, r: int, eps: int | None) -> None:
    """Validity table of the families; raises UnsupportedParameters."""
    p, _ = prime_power(q)
    if family is Family.NU:
        if p != 2:
            raise UnsupportedParameters(f"nu needs q even, got q={q}")
        if r < 3 or r % 2 == 0:
            raise UnsupportedParameters(f"nu is only modelled for odd r >= 3, got r={r}")
        if eps not in (None, 0):
            raise UnsupportedParameters("nu takes no eps")
        return
    if eps not in (1, -1):
        raise UnsupportedParameters(f"eps must be +1 or -1, got {eps}")
    if family is Family.NO_PERP:
        if q not in (3, 5) or r < 1:
            raise UnsupportedParameters(f"no-perp needs q in {{3, 5}} and r >= 1, got q={q} r={r}")
    elif family is Family.NO_EVEN3:
        if q != 3 or r < 2:
            raise UnsupportedParameters(f"no-even3 needs q = 3 and r >= 2, got q={q} r={r}")
    elif family is Family.NO_EVEN2:
        if q != 2 or r < 2:
            raise UnsupportedParameters(f"no-even2 needs q = 2 and r >= 2, got q={q} r={r}")
    elif family is Family.NO_ODD:
        if p == 2 or r < 1:
            raise UnsupportedParameters(f"no-odd needs q odd and r >= 1, got q={q} r={r}")
        if r == 1 and eps == -1:
            raise UnsupportedParameters("no-odd with r = 1 and eps = -1 has no edges")


@dataclass(frozen=True)
class QuadraticFormSpec:
    """Q(x) = sum_{i <= j} c_ij x_i x_j over field."""

    field: FieldSpec
    dim: int
    gram_upper: tuple[tuple[int, ...], ...]
    kind: FormKind
    model: FormModel = FormModel.STANDARD

    @cached_property
    def upper(self) -> np.ndarray:
        return np.array(self.gram_upper, dtype=np.int64)

    @cached_property
    def polar_matrix(self) -> np.ndarray:
        """Matrix M of the polar form, B(x, y) = x M y^T."""
        return fadd(self.field, self.upper, self.upper.T).astype(np.int64)

    def values(self, rows: np.ndarray) -> np.ndarray:
        """Q of every row of a (n, dim) index array."""
        rows = np.asarray(rows)
        if rows.shape[-1] != self.dim:
            raise DimensionMismatch(f"Expected vectors of length {self.dim}, got {rows.shape[-1]}")
        xu = fmatmul(self.field, rows, self.upper)
        return fsum(self.field, fmul(self.field, xu, rows), axis=1)

    def polar(self, rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
        """B(x, y) for every x in rows and y in cols, shape (len(rows), len(cols))."""
        rows = np.asarray(rows)
        cols = np.asarray(cols)
        if rows.shape[-1] != self.dim or cols.shape[-1] != self.dim:
            raise DimensionMismatch(f"Expected vectors of length {self.dim}")
        return fmatmul(self.field, fmatmul(self.field, rows, self.polar_matrix), cols.T)

    def check_nondegenerate(self) -> None:
        """Raise DegenerateForm unless the form is nondegenerate."""
        from srglab.geometry.subspace import nullspace

        radical = nullspace(self.field, self.polar_matrix)
        if self.field.p != 2:
            if radical:
                raise DegenerateForm(f"Polar form of {self.kind.value} form has a radical")
            return
        # Characteristic 2: the radical may be nonzero but must contain no singular vector.
        if len(radical) > 1:
            raise DegenerateForm(f"Radical of dimension {len(radical)} in characteristic 2")
        if radical and int(self.values(np.array(radical))[0]) == 0:
            raise DegenerateForm("Radical vector is singular")


@dataclass(frozen=True)
class HermitianSpaceSpec:
    """GF(q^2r) x GF(q^2r) with the hermitian pair (H, h)."""

    q: int
    r: int
    big_field: FieldSpec
    mid_field: FieldSpec
    base_field: FieldSpec

    kind = FormKind.HERMITIAN

    @property
    def m(self) -> int:
        """q = p^m."""
        return self.base_field.n

    @property
    def dim(self) -> int:
        return 2

    @cached_property
    def emb_mid(self) -> SubfieldEmbedding:
        return subfield_embedding(self.mid_field, self.big_field)

    @cached_property
    def emb_base(self) -> SubfieldEmbedding:
        return subfield_embedding(self.base_field, self.big_field)

    @cached_property
    def conj_table(self) -> np.ndarray:
        """x -> x^(q^r) on the big field."""
        return self.big_field.frobenius_table(self.m * self.r)

    @cached_property
    def mid_scalars(self) -> np.ndarray:
        """Big-field indices of GF(q^2)^*."""
        return self.emb_mid.table[1:]

    def h_values(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        """h((u, v)) as big-field indices (values lie in GF(q))."""
        big = self.big_field
        return big.trace_table(self.m)[big.mul_table[u, self.conj_table[v]]]

    def H_values(self, u1: np.ndarray, v1: np.ndarray, u2: np.ndarray, v2: np.ndarray) -> np.ndarray:
        """H((u1, v1), (u2, v2)) elementwise with broadcasting, as big-field indices."""
        big = self.big_field
        conj = self.conj_table
        s = big.add_table[big.mul_table[u1, conj[v2]], big.mul_table[v1, conj[u2]]]
        return big.trace_table(2 * self.m)[s]


def elliptic_delta(field: FieldSpec) -> int:
    """First delta (canonical order) making x^2 + x y + delta y^2 anisotropic."""
    for delta in range(field.order):
        anisotropic = True
        for x in range(field.order):
            for y in range(1, field.order):
                value = field.add(
                    field.add(field.mul(x, x), field.mul(x, y)), field.mul(delta, field.mul(y, y))
                )
                if value == 0:
                    anisotropic = False
                    break
            if not anisotropic:
                break
        if anisotropic:
            return delta
    raise DegenerateForm(f"No anisotropic binary form x^2 + xy + d y^2 over {field}")


def _upper(dim: int, entries: dict[tuple[int, int], int]) -> tuple[tuple[int, ...], ...]:
    mat = [[0] * dim for _ in range(dim)]
    for (i, j), c in entries.items():
        mat[i][j] = c
    return tuple(tuple(row) for row in mat)


@lru_cache(maxsize=None)
def canonical_form(
    family: Family | str,
    q: int,
    r: int,
    eps: int | None = None,
    model: FormModel | str = FormModel.STANDARD,
    modulus: tuple[int, ...] | None = None,
) -> QuadraticFormSpec | HermitianSpaceSpec:
    """The coordinate form a family is built on.

    modulus, when given, defines the coordinate field (GF(q), or GF(q^2r)
    for nu) instead of the default table.

    Raises:
        UnsupportedParameters: (family, q, r, eps) outside the validity table,
            or a split model requested where none exists
        ReducibleModulus: modulus factors over GF(p)
    """
    family = Family.from_name(family)
    model = FormModel(model)
    check_family_parameters(family, q, r, eps)
    p, m = prime_power(q)

    if family is Family.NU:
        if model is not FormModel.STANDARD:
            raise UnsupportedParameters("nu has a single model")
        return HermitianSpaceSpec(
            q=q,
            r=r,
            big_field=field_create(p, 2 * m * r, modulus),
            mid_field=field_create(p, 2 * m),
            base_field=field_create(p, m),
        )

    field = field_create(p, m, modulus)
    one = 1
    entries: dict[tuple[int, int], int] = {}
    if family.odd_dimension:
        dim = 2 * r + 1
        kind = FormKind.PARABOLIC
        if model is FormModel.STANDARD:
            for i in range(r):
                entries[(i, 2 * r - i)] = one
            entries[(r, r)] = one
        else:
            for i in range(r):
                entries[(i, r + i)] = one
            entries[(2 * r, 2 * r)] = one
    else:
        dim = 2 * r
        if model is FormModel.SPLIT:
            if eps != 1:
                raise UnsupportedParameters("The split model x y^T is hyperbolic (eps = +1)")
            kind = FormKind.HYPERBOLIC
            for i in range(r):
                entries[(i, r + i)] = one
        elif eps == 1:
            kind = FormKind.HYPERBOLIC
            for i in range(r):
                entries[(2 * i, 2 * i + 1)] = one
        else:
            kind = FormKind.ELLIPTIC
            for i in range(r - 1):
                entries[(2 * i, 2 * i + 1)] = one
            last = 2 * r - 2
            entries[(last, last)] = one
            entries[(last, last + 1)] = one
            entries[(last + 1, last + 1)] = elliptic_delta(field)

    form = QuadraticFormSpec(field, dim, _upper(dim, entries), kind, model)
    form.check_nondegenerate()
    logger.debug(f"{family.value} q={q} r={r} eps={eps}: {kind.value} {model.value} form, dim {dim}")
    return form


def _check_vector(form: QuadraticFormSpec, x: "Vector") -> None:
    if x.field != form.field:
        raise WrongField(f"Vector over {x.field}, form over {form.field}")
    if len(x.coords) != form.dim:
        raise DimensionMismatch(f"Vector of length {len(x.coords)}, form of dimension {form.dim}")


def eval_Q(form: QuadraticFormSpec, x: "Vector") -> FieldElement:
    """Q(x) by direct polynomial evaluation."""
    _check_vector(form, x)
    field = form.field
    acc = 0
    for i in range(form.dim):
        for j in range(i, form.dim):
            c = form.gram_upper[i][j]
            if c:
                acc = field.add(acc, field.mul(c, field.mul(x.coords[i], x.coords[j])))
    return FieldElement(acc, field)


def polar_B(form: QuadraticFormSpec, x: "Vector", y: "Vector") -> FieldElement:
    """B(x, y) = Q(x + y) - Q(x) - Q(y)."""
    _check_vector(form, x)
    _check_vector(form, y)
    return eval_Q(form, x + y) - eval_Q(form, x) - eval_Q(form, y)


def hermitian_forms(
    space: HermitianSpaceSpec, a: "Vector", b: "Vector"
) -> tuple[FieldElement, FieldElement]:
    """(H(a, b) in GF(q^2), h(a) in GF(q))."""
    for vec in (a, b):
        if vec.field != space.big_field or len(vec.coords) != 2:
            raise WrongField(f"{vec} is not a pair over {space.big_field}")
    big = space.big_field
    u1, v1 = a.coords
    u2, v2 = b.coords
    conj = space.m * space.r
    s = big.add(big.mul(u1, big.frobenius(v2, conj)), big.mul(v1, big.frobenius(u2, conj)))
    H = trace_index(big, s, 2 * space.m)
    h = trace_index(big, big.mul(u1, big.frobenius(v1, conj)), space.m)
    return (
        space.emb_mid.restrict(FieldElement(H, big)),
        space.emb_base.restrict(FieldElement(h, big)),
    )


def tangent_criterion(
    form: QuadraticFormSpec, rows: np.ndarray, cols: np.ndarray, q_rows: np.ndarray, q_cols: np.ndarray
) -> np.ndarray:
    """B(x, y)^2 == 4 Q(x) Q(y) for every (row, col) pair; 4 is taken in the field."""
    field = form.field
    b = form.polar(rows, cols)
    four = field.constant(4)
    rhs = fmul(field, four, fmul(field, np.asarray(q_rows)[:, None], np.asarray(q_cols)[None, :]))
    return fsub(field, fmul(field, b, b), rhs) == 0
