"""Coordinate spaces, canonical forms, projective points and subspaces."""

from srglab.geometry.forms import (
    Family,
    FormKind,
    FormModel,
    HermitianSpaceSpec,
    QuadraticFormSpec,
    canonical_form,
    check_family_parameters,
    eval_Q,
    hermitian_forms,
    polar_B,
    prime_power,
    tangent_criterion,
)
from srglab.geometry.points import (
    ProjectivePoint,
    Vector,
    enumerate_vertices,
    format_coords,
    format_vector,
    normalize_rows,
    normalize_rows_by,
    parse_coords,
    parse_vector,
    vertex_array,
)
from srglab.geometry.subspace import (
    Subspace,
    all_subspaces,
    coordinate_subspace,
    is_totally_singular,
    perp_basis,
)

__all__ = [
    "Family",
    "FormKind",
    "FormModel",
    "HermitianSpaceSpec",
    "ProjectivePoint",
    "QuadraticFormSpec",
    "Subspace",
    "Vector",
    "all_subspaces",
    "canonical_form",
    "check_family_parameters",
    "coordinate_subspace",
    "enumerate_vertices",
    "eval_Q",
    "format_coords",
    "format_vector",
    "hermitian_forms",
    "is_totally_singular",
    "normalize_rows",
    "normalize_rows_by",
    "parse_coords",
    "parse_vector",
    "perp_basis",
    "polar_B",
    "prime_power",
    "tangent_criterion",
    "vertex_array",
]
