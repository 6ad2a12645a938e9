"""Intriguing sets from totally singular subspaces.

For a totally singular W_t of dimension t, W_t^perp & X is intriguing, as are
its complement in X and the differences along a flag W_1 < W_2 < ...

Intersection numbers of W_t^perp & X:

    family     h1                                   h2                          type (eps=+1 / -1)
    no-perp    q^(r-1) (q^(r-t) - eps) / 2          q^(r-1) (q^(r-t) + eps) / 2   negative / positive
    no-even3   3^(r-1) (3^(r-t-1) - eps) / 2        3^(r-2) (3^(r-t) - eps) / 2   negative / positive
    no-even2   2^(2r-t-2) - 1                       2^(2r-t-2) - eps 2^(r-2)      positive / negative
    no-odd     q^(r-1) (q^(r-t) + eps q - eps) - 1  q^(r-1) (q^(r-t) + eps)       positive / negative

Complements have (k - h2, k - h1); flag differences have
(h1(t) - h2(t+1), h2(t) - h2(t+1)). The tabulated closed forms for both are
kept alongside as the printed values.
"""

import logging
from fractions import Fraction

import numpy as np

from srglab.construct.vertex_set import (
    Expected,
    Provenance,
    SetType,
    VertexSet,
    complement,
    difference,
)
from srglab.exceptions import UnsupportedParameters, WrongFamily
from srglab.geometry import (
    Family,
    FormKind,
    FormModel,
    QuadraticFormSpec,
    Subspace,
    all_subspaces,
    coordinate_subspace,
    is_totally_singular,
)
from srglab.srg import Graph, GraphSpec, expected_params
from srglab.srg.families import exact_int

logger = logging.getLogger(__name__)

# Type of W_t^perp & X for eps = +1; eps = -1 has the other type.
_PLUS_TYPE = {
    Family.NO_PERP: SetType.NEGATIVE,
    Family.NO_EVEN3: SetType.NEGATIVE,
    Family.NO_EVEN2: SetType.POSITIVE,
    Family.NO_ODD: SetType.POSITIVE,
}


def chain_length(family: Family, r: int) -> int:
    """Largest t for which W_t^perp & X is intriguing."""
    if family in (Family.NO_PERP, Family.NO_ODD):
        return r
    if family in (Family.NO_EVEN3, Family.NO_EVEN2):
        return r - 1
    raise WrongFamily(f"{family.value} has no totally singular construction")


def legal_t(spec: GraphSpec) -> list[int]:
    """t values giving a nonempty W_t^perp & X.

    In odd dimension W_r^perp & X consists of points with Q a nonzero square,
    so t = r is dropped for eps = -1.
    """
    top = chain_length(spec.family, spec.r)
    if spec.family.odd_dimension and spec.eps == -1:
        top = min(top, spec.r - 1)
    return list(range(1, top + 1))


def _check_t(spec: GraphSpec, t: int) -> None:
    if t not in legal_t(spec):
        allowed = legal_t(spec)
        raise UnsupportedParameters(f"t={t} is outside {allowed} for {spec.label}")


def _flag_positions(form: QuadraticFormSpec, t: int) -> list[int]:
    if form.model is FormModel.STANDARD and form.kind in (FormKind.HYPERBOLIC, FormKind.ELLIPTIC):
        return [2 * i for i in range(t)]
    return list(range(t))


def singular_chain(form: QuadraticFormSpec, r: int) -> list[Subspace]:
    """Canonical flag of totally singular subspaces W_1 < W_2 < ...

    Parabolic forms give r members, hyperbolic and elliptic forms r - 1.

    Raises:
        UnsupportedParameters: the form is not a quadratic form of the families
    """
    if not isinstance(form, QuadraticFormSpec):
        raise UnsupportedParameters("Singular chains need a quadratic form")
    length = r if form.kind is FormKind.PARABOLIC else r - 1
    chain = []
    for t in range(1, length + 1):
        w = coordinate_subspace(form.field, form.dim, _flag_positions(form, t))
        if not is_totally_singular(form, w):
            raise UnsupportedParameters(f"Flag member of dimension {t} is not totally singular")
        chain.append(w)
    return chain


def totally_singular_subspaces(form: QuadraticFormSpec, t: int) -> list[Subspace]:
    """Every totally singular subspace of dimension t (small parameters only)."""
    return [s for s in all_subspaces(form.field, form.dim, t) if is_totally_singular(form, s)]


# ---------------------------------------------------------------------------
# Intersection number formulas
# ---------------------------------------------------------------------------


def _set_type(spec: GraphSpec) -> SetType:
    plus = _PLUS_TYPE[spec.family]
    if spec.eps == 1:
        return plus
    return SetType.POSITIVE if plus is SetType.NEGATIVE else SetType.NEGATIVE


def _perp_numbers(family: Family, q: int, r: int, t: int, eps: int) -> tuple[int, int]:
    F = Fraction
    qq = F(q)
    if family is Family.NO_PERP:
        h1 = qq ** (r - 1) * (qq ** (r - t) - eps) / 2
        h2 = qq ** (r - 1) * (qq ** (r - t) + eps) / 2
    elif family is Family.NO_EVEN3:
        h1 = F(3) ** (r - 1) * (F(3) ** (r - t - 1) - eps) / 2
        h2 = F(3) ** (r - 2) * (F(3) ** (r - t) - eps) / 2
    elif family is Family.NO_EVEN2:
        h1 = F(2) ** (2 * r - t - 2) - 1
        h2 = F(2) ** (2 * r - t - 2) - eps * F(2) ** (r - 2)
    elif family is Family.NO_ODD:
        h1 = qq ** (r - 1) * (qq ** (r - t) + eps * q - eps) - 1
        h2 = qq ** (r - 1) * (qq ** (r - t) + eps)
    else:
        raise WrongFamily(f"{family.value} has no totally singular construction")
    return exact_int(h1), exact_int(h2)


def _printed_complement(family: Family, q: int, r: int, t: int, eps: int) -> tuple[int, int]:
    F = Fraction
    qq = F(q)
    if family is Family.NO_PERP:
        h1 = qq ** (r - 1) * (qq**r - qq ** (r - t) - 2 * eps) / 2
        h2 = qq ** (2 * r - t - 1) * (qq**t - 1) / 2
    elif family is Family.NO_EVEN3:
        h1 = F(3) ** (r - 2) * (F(3) ** r - F(3) ** (r - t) - 2 * eps) / 2
        h2 = F(3) ** (2 * r - t - 2) * (F(3) ** t - 1) / 2
    elif family is Family.NO_EVEN2:
        h1 = F(2) ** (2 * r - t - 2) * (F(2) ** t - 1) + eps * F(2) ** (r - 2) - 1
        h2 = F(2) ** (2 * r - t - 2) * (F(2) ** t - 1)
    else:
        h1 = qq ** (2 * r - t - 1) * (qq**t - 1) + eps * qq ** (r - 1) * (q - 2) - 1
        h2 = qq ** (2 * r - t - 1) * (qq**t - 1)
    return exact_int(h1), exact_int(h2)


def _printed_difference(family: Family, q: int, r: int, t: int, eps: int) -> tuple[int, int]:
    F = Fraction
    qq = F(q)
    if family is Family.NO_PERP:
        h1 = qq ** (r - 1) * (qq ** (r - t) - qq ** (r - t - 1) - 2 * eps) / 2
        h2 = 2 * qq ** (2 * r - t - 2)
    elif family is Family.NO_EVEN3:
        h1 = F(3) ** (r - 2) * (F(3) ** (r - t) - F(3) ** (r - t - 1) - 2 * eps) / 2
        h2 = F(3) ** (2 * r - t - 2)
    elif family is Family.NO_EVEN2:
        h1 = F(2) ** (2 * r - t - 3) + eps * F(2) ** (r - 2) - 1
        h2 = F(2) ** (2 * r - t - 3)
    else:
        h1 = qq ** (2 * r - t - 2) * (q - 1) + eps * qq ** (r - 1) * (q - 2) - 1
        h2 = qq ** (2 * r - t - 2) * (q - 1)
    return exact_int(h1), exact_int(h2)


def perp_expected(spec: GraphSpec, t: int) -> Expected:
    """Expected (h1, h2, type) of W_t^perp & X."""
    _check_t(spec, t)
    h1, h2 = _perp_numbers(spec.family, spec.q, spec.r, t, spec.eps)
    return Expected(h1, h2, _set_type(spec), source="perp")


def complement_expected(spec: GraphSpec, t: int) -> Expected:
    """Expected values of X minus W_t^perp & X, with the printed closed form."""
    _check_t(spec, t)
    k = expected_params(spec).k
    h1, h2 = _perp_numbers(spec.family, spec.q, spec.r, t, spec.eps)
    printed = _printed_complement(spec.family, spec.q, spec.r, t, spec.eps)
    return Expected(k - h2, k - h1, _set_type(spec), source="complement", printed=printed)


def difference_expected(spec: GraphSpec, t: int) -> Expected:
    """Expected values of (W_t^perp & X) minus (W_{t+1}^perp & X).

    Derived from the perp numbers at t and t + 1; the printed closed form
    disagrees in h2 for no-perp at q = 3 and for no-even3.
    """
    top = chain_length(spec.family, spec.r)
    if not 1 <= t < top:
        raise UnsupportedParameters(f"Flag difference needs 1 <= t < {top}, got t={t}")
    h1_t, h2_t = _perp_numbers(spec.family, spec.q, spec.r, t, spec.eps)
    _, h2_next = _perp_numbers(spec.family, spec.q, spec.r, t + 1, spec.eps)
    printed = _printed_difference(spec.family, spec.q, spec.r, t, spec.eps)
    return Expected(
        h1_t - h2_next, h2_t - h2_next, _set_type(spec), source="difference", printed=printed
    )


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------


def _quadratic_form(g: Graph) -> QuadraticFormSpec:
    if not isinstance(g.form, QuadraticFormSpec):
        raise WrongFamily(f"{g.spec.label} is not built on a quadratic form")
    return g.form


def perp_set(g: Graph, w: Subspace, provenance: Provenance, trivial_ok: bool = False) -> VertexSet:
    """W^perp & X for a subspace W of g's space."""
    form = _quadratic_form(g)
    basis = np.array(w.basis, dtype=np.int64)
    mask = np.all(form.polar(g.vertices, basis) == 0, axis=1)
    trivial = trivial_ok and mask.sum() in (0, g.v)
    return VertexSet.from_mask(g, mask, provenance, trivial=trivial)


def construction_I(g: Graph, t: int | None = None, subspace: Subspace | None = None) -> VertexSet:
    """W_t^perp & X with expected values attached.

    Args:
        g: Graph of no-perp, no-even3, no-even2 or no-odd
        t: Flag dimension; defaults to the dimension of subspace
        subspace: Any totally singular subspace; defaults to the canonical flag member

    Raises:
        UnsupportedParameters: t outside the family's bound, or subspace not totally singular
        WrongFamily: g is the hermitian graph
    """
    form = _quadratic_form(g)
    if subspace is None:
        if t is None:
            raise UnsupportedParameters("construction_I needs t or a subspace")
        _check_t(g.spec, t)
        subspace = singular_chain(form, g.spec.r)[t - 1]
        params = {"t": t}
    else:
        if t is not None and t != subspace.dim_sub:
            raise UnsupportedParameters(f"Subspace has dimension {subspace.dim_sub}, t={t}")
        t = subspace.dim_sub
        _check_t(g.spec, t)
        if not is_totally_singular(form, subspace):
            raise UnsupportedParameters("Subspace is not totally singular")
        params = {"t": t, "basis": [list(b) for b in subspace.canonical_basis]}
    vset = perp_set(g, subspace, Provenance("construction_I", params))
    logger.debug(f"{g.spec.label} t={t}: |W^perp & X| = {vset.size}")
    return vset.with_expected(perp_expected(g.spec, t))


def construction_I_complement(g: Graph, t: int) -> VertexSet:
    """X minus W_t^perp & X."""
    inner = construction_I(g, t)
    vset = complement(inner, expected=complement_expected(g.spec, t))
    vset.provenance = Provenance("complement", {"t": t})
    return vset


def construction_I_difference(g: Graph, t: int) -> VertexSet:
    """(W_t^perp & X) minus (W_{t+1}^perp & X) along the canonical flag."""
    expected = difference_expected(g.spec, t)
    form = _quadratic_form(g)
    chain = singular_chain(form, g.spec.r)
    outer = construction_I(g, t)
    # W_{t+1}^perp & X may be empty (t + 1 = r, eps = -1).
    inner = perp_set(g, chain[t], Provenance("construction_I", {"t": t + 1}), trivial_ok=True)
    if inner.size == 0:
        vset = outer.with_expected(expected)
        vset.provenance = Provenance("difference", {"t": t})
        return vset
    vset = difference(outer, inner, expected=expected)
    vset.provenance = Provenance("difference", {"t": t})
    return vset


def witt_invariant_numbers(g: Graph, t: int) -> set[tuple[int, int]]:
    """Measured (h1, h2) over every totally singular subspace of dimension t.

    A single element means the numbers do not depend on the choice of W_t.
    """
    from srglab.verify.intriguing import check_intriguing

    form = _quadratic_form(g)
    found = set()
    for w in totally_singular_subspaces(form, t):
        report = check_intriguing(g, construction_I(g, subspace=w))
        found.add((report.h1_measured, report.h2_measured))
    return found
