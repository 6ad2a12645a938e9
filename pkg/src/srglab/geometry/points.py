"""Vectors, projective points and vertex enumeration."""

import logging
import re
from dataclasses import dataclass

import numpy as np

from srglab.exceptions import DimensionMismatch, UnsupportedParameters, WrongField
from srglab.gf import FieldElement, FieldSpec
from srglab.geometry.forms import (
    Family,
    FormModel,
    HermitianSpaceSpec,
    QuadraticFormSpec,
    canonical_form,
)
from srglab.geometry.matrix import all_vectors, encode_rows, fmul

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Vector:
    """Coordinates as field element indices."""

    coords: tuple[int, ...]
    field: FieldSpec

    @classmethod
    def of(cls, field: FieldSpec, coords) -> "Vector":
        values = []
        for c in coords:
            if isinstance(c, FieldElement):
                if c.field != field:
                    raise WrongField(f"{c} is not an element of {field}")
                c = c.value
            c = int(c)
            if not 0 <= c < field.order:
                raise WrongField(f"{c} is not an element index of {field}")
            values.append(c)
        return cls(tuple(values), field)

    @property
    def dim(self) -> int:
        return len(self.coords)

    def elements(self) -> list[FieldElement]:
        return [FieldElement(c, self.field) for c in self.coords]

    def is_zero(self) -> bool:
        return not any(self.coords)

    def _check(self, other: "Vector") -> None:
        if other.field != self.field:
            raise WrongField(f"Vectors over {self.field} and {other.field}")
        if other.dim != self.dim:
            raise DimensionMismatch(f"Vectors of length {self.dim} and {other.dim}")

    def __add__(self, other: "Vector") -> "Vector":
        self._check(other)
        f = self.field
        return Vector(tuple(f.add(a, b) for a, b in zip(self.coords, other.coords, strict=True)), f)

    def __sub__(self, other: "Vector") -> "Vector":
        self._check(other)
        f = self.field
        return Vector(tuple(f.sub(a, b) for a, b in zip(self.coords, other.coords, strict=True)), f)

    def scale(self, c: int) -> "Vector":
        return Vector(tuple(self.field.mul(c, a) for a in self.coords), self.field)

    def __repr__(self) -> str:
        return format_vector(self)


@dataclass(frozen=True)
class ProjectivePoint:
    """A point <x>, stored by its canonical representative."""

    rep: Vector

    @classmethod
    def of(cls, vector: Vector, scalars: np.ndarray | None = None) -> "ProjectivePoint":
        """Normalize vector.

        Without scalars the representative has first nonzero coordinate 1.
        With scalars (the multiplier group as field indices) it is the
        lexicographically smallest multiple.
        """
        if vector.is_zero():
            raise UnsupportedParameters("The zero vector spans no point")
        row = np.array([vector.coords], dtype=np.int64)
        if scalars is None:
            out = normalize_rows(vector.field, row)[0]
        else:
            out = normalize_rows_by(vector.field, row, scalars)[0]
        return cls(Vector(tuple(int(c) for c in out), vector.field))

    def __repr__(self) -> str:
        return f"<{format_vector(self.rep)}>"


# ---------------------------------------------------------------------------
# Vectorised normalization and enumeration
# ---------------------------------------------------------------------------


def normalize_rows(field: FieldSpec, rows: np.ndarray) -> np.ndarray:
    """Scale every nonzero row so its first nonzero entry is 1."""
    rows = np.asarray(rows, dtype=np.int64)
    first = np.argmax(rows != 0, axis=1)
    lead = rows[np.arange(len(rows)), first]
    inv = field.inv_table[lead].astype(np.int64)
    return fmul(field, rows, inv[:, None]).astype(np.int64)


def normalize_rows_by(field: FieldSpec, rows: np.ndarray, scalars: np.ndarray) -> np.ndarray:
    """Lexicographically smallest multiple of every row over the given scalars."""
    rows = np.asarray(rows, dtype=np.int64)
    best = rows.copy()
    best_code = encode_rows(best, field.order)
    for s in scalars:
        cand = field.mul_table[int(s), rows].astype(np.int64)
        code = encode_rows(cand, field.order)
        better = code < best_code
        best[better] = cand[better]
        best_code = np.where(better, code, best_code)
    return best


def projective_points(field: FieldSpec, dim: int) -> np.ndarray:
    """Canonical representatives of all points of PG(dim - 1, q), in lexicographic order."""
    vecs = all_vectors(field, dim)[1:]
    first = np.argmax(vecs != 0, axis=1)
    keep = vecs[np.arange(len(vecs)), first] == 1
    return vecs[keep]


def hermitian_points(space: HermitianSpaceSpec) -> np.ndarray:
    """Canonical representatives of the GF(q^2)-points of GF(q^2r)^2, lexicographic."""
    big = space.big_field
    vecs = all_vectors(big, 2)[1:]
    normal = normalize_rows_by(big, vecs, space.mid_scalars)
    keep = np.all(normal == vecs, axis=1)
    return vecs[keep]


def select_vertices(
    family: Family,
    form: QuadraticFormSpec | HermitianSpaceSpec,
    points: np.ndarray,
    eps: int | None,
    part: int = 1,
) -> np.ndarray:
    """Boolean mask of the points that are vertices of the family's graph."""
    if family is Family.NU:
        return form.h_values(points[:, 0], points[:, 1]) != 0
    values = form.values(points)
    if family is Family.NO_EVEN2:
        return values != 0
    if family is Family.NO_EVEN3:
        if part not in (1, 2):
            raise UnsupportedParameters(f"no-even3 part must be 1 or 2, got {part}")
        return values == form.field.constant(part)
    classes = form.field.square_class_table[values]
    return classes == eps


def vertex_array(
    family: Family | str,
    q: int,
    r: int,
    eps: int | None = None,
    model: FormModel | str = FormModel.STANDARD,
    part: int = 1,
    modulus: tuple[int, ...] | None = None,
) -> tuple[np.ndarray, QuadraticFormSpec | HermitianSpaceSpec]:
    """Vertex coordinates (v, dim) in canonical order, together with the form."""
    family = Family.from_name(family)
    form = canonical_form(family, q, r, eps, model, modulus)
    if isinstance(form, HermitianSpaceSpec):
        points = hermitian_points(form)
    else:
        points = projective_points(form.field, form.dim)
    mask = select_vertices(family, form, points, eps, part)
    vertices = points[mask]
    logger.debug(f"{family.value} q={q} r={r} eps={eps}: {len(vertices)} of {len(points)} points")
    return vertices, form


def enumerate_vertices(
    family: Family | str,
    q: int,
    r: int,
    eps: int | None = None,
    model: FormModel | str = FormModel.STANDARD,
    part: int = 1,
    modulus: tuple[int, ...] | None = None,
) -> list[ProjectivePoint]:
    """The vertex set X of a family's graph as canonical projective points.

    Raises:
        UnsupportedParameters: outside the family's validity table
    """
    vertices, form = vertex_array(family, q, r, eps, model, part, modulus)
    field = form.big_field if isinstance(form, HermitianSpaceSpec) else form.field
    return [ProjectivePoint(Vector(tuple(int(c) for c in row), field)) for row in vertices]


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------


def format_element(field: FieldSpec, a: int) -> str:
    return "[" + ",".join(str(c) for c in field.coeffs(int(a))) + "]"


def format_coords(field: FieldSpec, coords) -> str:
    return "(" + ", ".join(format_element(field, c) for c in coords) + ")"


def format_vector(vector: Vector) -> str:
    return format_coords(vector.field, vector.coords)


_ELEMENT = re.compile(r"\[([^\]]*)\]")


def parse_coords(text: str, field: FieldSpec) -> tuple[int, ...]:
    """Inverse of format_coords."""
    text = text.strip()
    if not (text.startswith("(") and text.endswith(")")):
        raise UnsupportedParameters(f"Malformed vertex: {text!r}")
    coords = []
    for match in _ELEMENT.finditer(text):
        digits = [int(c) for c in match.group(1).split(",") if c.strip()]
        coords.append(field.from_coeffs(digits))
    return tuple(coords)


def parse_vector(text: str, field: FieldSpec) -> Vector:
    return Vector(parse_coords(text, field), field)
