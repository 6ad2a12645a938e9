"""The five strongly regular graph families: specs, formulas, builds, measurement."""

from srglab.geometry.forms import Family, FormModel
from srglab.srg.families import (
    GraphSpec,
    SrgParams,
    expected_params,
    srg_eigenvalues,
    validate_spec,
)
from srglab.srg.graph import (
    Graph,
    build_graph,
    complement_relation,
    graph_summary,
    line_singular_counts,
    measure_params,
    tangent_points_on_line,
)

__all__ = [
    "Family",
    "FormModel",
    "Graph",
    "GraphSpec",
    "SrgParams",
    "build_graph",
    "complement_relation",
    "expected_params",
    "graph_summary",
    "line_singular_counts",
    "measure_params",
    "srg_eigenvalues",
    "tangent_points_on_line",
    "validate_spec",
]
