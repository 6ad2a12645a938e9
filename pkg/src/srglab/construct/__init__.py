"""Intriguing set constructions: singular subspaces, group orbits, nonsingular points."""

from srglab.construct.groups import (
    GroupElementG,
    GroupElementK,
    GroupElementL,
    GroupKind,
    group_orbits,
)
from srglab.construct.lemmas import LEMMAS, LemmaReport, lemma_checks
from srglab.construct.nonsingular import construction_III, sample_y
from srglab.construct.singular import (
    construction_I,
    construction_I_complement,
    construction_I_difference,
    legal_t,
    singular_chain,
    totally_singular_subspaces,
)
from srglab.construct.unions import m_k_representative, m_k_sets, orbit_union_sets
from srglab.construct.vertex_set import (
    Expected,
    Provenance,
    SetType,
    VertexSet,
    complement,
    difference,
    disjoint_union,
    read_set_file,
    table_set_algebra,
    write_set_file,
)

__all__ = [
    "Expected",
    "GroupElementG",
    "GroupElementK",
    "GroupElementL",
    "GroupKind",
    "LEMMAS",
    "LemmaReport",
    "Provenance",
    "SetType",
    "VertexSet",
    "complement",
    "construction_I",
    "construction_I_complement",
    "construction_I_difference",
    "construction_III",
    "difference",
    "disjoint_union",
    "group_orbits",
    "legal_t",
    "lemma_checks",
    "m_k_representative",
    "m_k_sets",
    "orbit_union_sets",
    "read_set_file",
    "sample_y",
    "singular_chain",
    "table_set_algebra",
    "totally_singular_subspaces",
    "write_set_file",
]
