"""Orbit unions that are intriguing sets.

    no-perp  each K-orbit                          ((1 - eps) q^(r-1), q^(r-1))
    no-odd   <(0,0,1)>^K (eps = +1)                (q^r - 1, 2 q^(r-1))
             K-orbits with a common x, eps = +1    ((2q - 3) q^(r-1) - 1, (q - 1) q^(r-1))
             K-orbits with a common x, eps = -1    (q^(r-1) - 1, (q - 1) q^(r-1))
    nu       M_k, the G-orbits with u = omega^k    (q^(2(r-1)) - 1, q^(2r-3) (q^2 - 1))
"""

import logging
from collections import defaultdict

import numpy as np

from srglab.construct.groups import (
    GroupKind,
    group_orbits,
    omega_class_count,
)
from srglab.construct.vertex_set import (
    Expected,
    Provenance,
    SetType,
    VertexSet,
    disjoint_union,
)
from srglab.exceptions import UnsupportedParameters, WrongFamily
from srglab.geometry import Family, HermitianSpaceSpec, format_coords, normalize_rows_by
from srglab.srg import Graph

logger = logging.getLogger(__name__)


def orbit_owner(orbits: list[VertexSet], v: int) -> np.ndarray:
    """Orbit number of every vertex."""
    owner = np.full(v, -1, dtype=np.int64)
    for n, orbit in enumerate(orbits):
        owner[orbit.indices] = n
    return owner


def k_union_expected(q: int, r: int, eps: int) -> Expected:
    if eps == 1:
        return Expected(
            (2 * q - 3) * q ** (r - 1) - 1, (q - 1) * q ** (r - 1), SetType.POSITIVE, "k_orbit_union"
        )
    return Expected(q ** (r - 1) - 1, (q - 1) * q ** (r - 1), SetType.NEGATIVE, "k_orbit_union")


def k_orbit_unions(g: Graph) -> list[VertexSet]:
    """<(0,0,1)>^K (eps = +1) and, for every projective x != 0, the union of
    the K-orbits whose vertices have x-part x."""
    if g.spec.family is not Family.NO_ODD:
        raise WrongFamily(f"K-orbit unions are taken in no-odd, not {g.spec.label}")
    r = g.spec.r
    orbits = group_orbits(GroupKind.K, g)
    by_x: dict[tuple[int, ...], list[VertexSet]] = defaultdict(list)
    result = []
    for orbit in orbits:
        x = tuple(int(c) for c in g.vertices[orbit.indices[0], :r])
        if not any(x):
            result.append(orbit)
        else:
            by_x[x].append(orbit)

    expected = k_union_expected(g.spec.q, r, g.spec.eps)
    for x, members in by_x.items():
        provenance = Provenance("k_orbit_union", {"x": format_coords(g.field, x)})
        union = disjoint_union(*members, provenance=provenance)
        result.append(union.with_expected(expected))
    result.sort(key=lambda s: int(s.indices[0]))
    logger.info(f"{g.spec.label}: {len(result)} K-orbit unions")
    return result


# ---------------------------------------------------------------------------
# M_k in the hermitian graph
# ---------------------------------------------------------------------------


def m_k_expected(q: int, r: int) -> Expected:
    """Counted h1 is q^(2(r-1)) - 1; the tabulated q^(2(r-2)) - 1 is kept as printed."""
    h2 = q ** (2 * r - 3) * (q * q - 1)
    return Expected(
        q ** (2 * (r - 1)) - 1,
        h2,
        SetType.NEGATIVE,
        source="m_k",
        printed=(q ** (2 * (r - 2)) - 1, h2),
    )


def m_k_representative(space: HermitianSpaceSpec, k: int, i: int, choice: int = 0) -> np.ndarray:
    """Canonical coordinates of <(omega^k, v_ki)>.

    v_ki is the choice-th v (canonical order) with Tr(omega^(k q^r) v) = i,
    i a nonzero base-field index.
    """
    big = space.big_field
    if not 0 < i < space.base_field.order:
        raise UnsupportedParameters(f"i must be a nonzero element of GF({space.q})")
    u = big.pow(big.primitive, k)
    candidates = np.arange(big.order)
    traces = big.trace_table(space.m)[big.mul_table[int(space.conj_table[u]), candidates]]
    matches = np.flatnonzero(traces == space.emb_base(i))
    if choice >= len(matches):
        raise UnsupportedParameters(f"Only {len(matches)} representatives for k={k}, i={i}")
    row = np.array([[u, int(matches[choice])]], dtype=np.int64)
    return normalize_rows_by(big, row, space.mid_scalars)[0]


def m_k_sets(g: Graph, choice: int = 0) -> list[VertexSet]:
    """M_k for k = 0 .. e-1, each the union over i of the G-orbits of <(omega^k, v_ki)>."""
    if g.spec.family is not Family.NU:
        raise WrongFamily(f"M_k lives in the hermitian graph, not {g.spec.label}")
    space = g.form
    q, r = g.spec.q, g.spec.r
    orbits = group_orbits(GroupKind.G, g)
    owner = orbit_owner(orbits, g.v)
    expected = m_k_expected(q, r)

    result = []
    for k in range(omega_class_count(space)):
        reps = np.array([m_k_representative(space, k, i, choice) for i in range(1, q)])
        idx = g.index_of(reps)
        if np.any(idx < 0):
            raise UnsupportedParameters(f"A representative for k={k} is not a vertex")
        chosen = sorted({int(owner[j]) for j in idx})
        note = None
        if len(chosen) != q - 1:
            note = f"M_{k}: representatives lie in {len(chosen)} orbits, expected {q - 1}"
            logger.warning(note)
        provenance = Provenance(
            "m_k", {"k": k, "representatives": [g.label(int(j)) for j in idx]}
        )
        union = disjoint_union(*(orbits[c] for c in chosen), provenance=provenance)
        union = union.with_expected(expected)
        if note:
            union.notes.append(note)
        result.append(union)
    logger.info(f"{g.spec.label}: {len(result)} sets M_k of size {result[0].size}")
    return result


def orbit_union_sets(g: Graph) -> list[VertexSet]:
    """The designated orbit unions of g.

    no-perp: the K-orbits; no-odd: <(0,0,1)>^K and the K-orbit unions per x;
    nu: the sets M_k.

    Raises:
        WrongFamily: g is another family, or not built on the group's model
    """
    family = g.spec.family
    if family is Family.NO_PERP:
        return group_orbits(GroupKind.K, g)
    if family is Family.NO_ODD:
        return k_orbit_unions(g)
    if family is Family.NU:
        return m_k_sets(g)
    raise WrongFamily(f"{g.spec.label} has no designated orbit unions")
