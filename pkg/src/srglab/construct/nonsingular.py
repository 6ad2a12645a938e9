"""Intriguing sets cut out by a nonsingular point <y>.

M = {<x> : B(x, y)^2 - Q(x) Q(y) is a nonzero square}; M & X is intriguing for

    no-perp  eps = +1, Q(y) nonsquare    ((q-1)/2 q^(r-1)(q^(r-1)+1)/2, (q-1)/2 q^(r-1)(q^(r-1)-1)/2)
    no-perp  eps = -1, Q(y) square       the same pair swapped, negative
    no-even3 eps = +1, c Q(y) nonsquare  (3^(r-2)(3^(r-1)-1)/2, 3^(r-2)(3^(r-1)+1)/2), negative

where c is the Q-value of the no-even3 vertices.
"""

import logging
from collections.abc import Sequence

import numpy as np

from srglab.construct.vertex_set import Expected, Provenance, SetType, VertexSet
from srglab.exceptions import UnsupportedParameters, WrongFamily, WrongSquareClass
from srglab.geometry import Family, ProjectivePoint, QuadraticFormSpec, Vector, format_coords
from srglab.geometry.matrix import fmul, fsub
from srglab.geometry.points import projective_points
from srglab.srg import Graph, GraphSpec

logger = logging.getLogger(__name__)


def required_y_class(spec: GraphSpec) -> int:
    """Square class (+1 / -1) that c Q(y) must have; c = 1 outside no-even3.

    Raises:
        WrongFamily: no nonsingular-point construction for this graph
    """
    if spec.family is Family.NO_PERP:
        return -spec.eps
    if spec.family is Family.NO_EVEN3 and spec.eps == 1:
        return -1
    raise WrongFamily(f"No nonsingular-point construction for {spec.label}")


def nonsingular_expected(spec: GraphSpec) -> Expected:
    required_y_class(spec)
    q, r = spec.q, spec.r
    if spec.family is Family.NO_EVEN3:
        return Expected(
            3 ** (r - 2) * (3 ** (r - 1) - 1) // 2,
            3 ** (r - 2) * (3 ** (r - 1) + 1) // 2,
            SetType.NEGATIVE,
            source="nonsingular",
        )
    half = (q - 1) // 2
    big = half * q ** (r - 1) * (q ** (r - 1) + 1) // 2
    small = half * q ** (r - 1) * (q ** (r - 1) - 1) // 2
    if spec.eps == 1:
        return Expected(big, small, SetType.POSITIVE, source="nonsingular")
    return Expected(small, big, SetType.NEGATIVE, source="nonsingular")


def _coords(y: ProjectivePoint | Vector | Sequence[int], dim: int) -> np.ndarray:
    if isinstance(y, ProjectivePoint):
        y = y.rep
    if isinstance(y, Vector):
        y = y.coords
    row = np.array([int(c) for c in y], dtype=np.int64)
    if row.shape != (dim,):
        raise UnsupportedParameters(f"y must have {dim} coordinates, got {row.size}")
    return row


def _y_class(form: QuadraticFormSpec, spec: GraphSpec, row: np.ndarray) -> int:
    field = form.field
    value = int(form.values(row[None, :])[0])
    if spec.family is Family.NO_EVEN3:
        value = field.mul(field.constant(spec.part), value)
    return int(field.square_class_table[value])


def construction_III(g: Graph, y: ProjectivePoint | Vector | Sequence[int]) -> VertexSet:
    """M & X for the nonsingular point <y>, with expected values attached.

    Raises:
        WrongFamily: g is not one of the three graphs above
        WrongSquareClass: y is singular or Q(y) lies in the wrong square class
    """
    if not isinstance(g.form, QuadraticFormSpec):
        raise WrongFamily(f"{g.spec.label} is not built on a quadratic form")
    required = required_y_class(g.spec)
    form = g.form
    field = form.field
    row = _coords(y, form.dim)
    label = format_coords(field, row)

    y_class = _y_class(form, g.spec, row)
    if y_class == 0:
        raise WrongSquareClass(f"{label} is singular")
    if y_class != required:
        wanted = "square" if required == 1 else "nonsquare"
        raise WrongSquareClass(f"Q({label}) must be a {wanted} for {g.spec.label}")

    qy = int(form.values(row[None, :])[0])
    b = form.polar(g.vertices, row[None, :])[:, 0]
    disc = fsub(field, fmul(field, b, b), fmul(field, form.values(g.vertices), np.asarray(qy)))
    mask = field.square_class_table[disc] == 1
    vset = VertexSet.from_mask(g, mask, Provenance("construction_III", {"y": label}))
    logger.debug(f"{g.spec.label} y={label}: |M & X| = {vset.size}")
    return vset.with_expected(nonsingular_expected(g.spec))


def sample_y(g: Graph, n: int, seed: int) -> list[tuple[int, ...]]:
    """n distinct nonsingular points of the prescribed class, drawn with a seeded generator."""
    if not isinstance(g.form, QuadraticFormSpec):
        raise WrongFamily(f"{g.spec.label} is not built on a quadratic form")
    required = required_y_class(g.spec)
    form = g.form
    points = projective_points(form.field, form.dim)
    values = form.values(points)
    if g.spec.family is Family.NO_EVEN3:
        values = fmul(form.field, values, np.asarray(form.field.constant(g.spec.part)))
    pool = points[form.field.square_class_table[values] == required]
    rng = np.random.default_rng(seed)
    picks = rng.choice(len(pool), size=min(n, len(pool)), replace=False)
    return [tuple(int(c) for c in pool[i]) for i in np.sort(picks)]


def construction_III_sizes(g: Graph, ys: Sequence) -> list[int]:
    """|M & X| for each y; constant over the prescribed class."""
    return [construction_III(g, y).size for y in ys]
