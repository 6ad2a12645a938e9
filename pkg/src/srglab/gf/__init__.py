"""Finite field arithmetic: GF(p^n), subfield embeddings and traces."""

from srglab.gf.embedding import (
    SubfieldEmbedding,
    embed,
    subfield_embedding,
    trace,
    trace_index,
)
from srglab.gf.field import (
    FieldElement,
    FieldSpec,
    SquareClass,
    field_create,
    is_square,
    primitive_element,
)
from srglab.gf.moduli import DEFAULT_MODULI, format_modulus

__all__ = [
    "DEFAULT_MODULI",
    "FieldElement",
    "FieldSpec",
    "SquareClass",
    "SubfieldEmbedding",
    "embed",
    "field_create",
    "format_modulus",
    "is_square",
    "primitive_element",
    "subfield_embedding",
    "trace",
    "trace_index",
]
