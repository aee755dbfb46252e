"""Geometric and combinatorial tools for finitely generated monoids.

The package works with monoid presentations and the structures built on
top of them: string rewriting and van Kampen style areas, right Cayley
graphs as semimetric spaces, directed 2-complexes with bounded cells,
quasi-isometries between semimetric spaces, and a family of oracle-backed
monoids whose geometry is independent of the oracle.

Everything is computed inside explicitly bounded balls, and every answer
that depends on a bound carries a flag saying whether it is exact or only
what the bound could see.
"""

from __future__ import annotations

from .cayley import (
    CayleyBall,
    Edge,
    ExtendedDistance,
    QuasimetricReport,
    SccClass,
    SchutzenbergerGraph,
    UndirectedView,
    ball_to_dot,
    ball_to_json,
    ball_to_json_dict,
    check_quasimetric,
    distance,
    enumerate_ball,
    schutzenberger_graph,
    strongly_connected_components,
    undirected_view,
)
from .families import (
    MX_ALPHABET,
    IsometryReport,
    MembershipOracle,
    f2_ball,
    is_mx_normal_form,
    mx_ball,
    mx_isometry_check,
    mx_normal_form,
    mx_presentation,
    mx_successors,
    mx_word_problem,
    parse_oracle,
)
from .presentation import (
    BUILTIN_NAMES,
    Presentation,
    PresentationError,
    Relation,
    RuleInstance,
    RuleOracle,
    builtin,
    parse_presentation,
    serialize_presentation,
)
from .qi import (
    BushyReport,
    DensityReport,
    EmbeddingReport,
    QiError,
    QiSpec,
    TypeReport,
    VertexMap,
    check_bushy_hypotheses,
    check_quasi_dense,
    m_bound,
    parse_vertex_map,
    quasi_inverse,
    quasi_inverse_constants,
    search_type_witness,
    serialize_vertex_map,
    type_leq,
    verify_qi_embedding,
)
from .rewriting import (
    INF,
    UNKNOWN,
    BudgetExceededError,
    EqualityVerdict,
    GrowthTable,
    RewriteError,
    Status,
    apply_instance,
    apply_relation_once,
    dehn_sample,
    equality_search,
    is_irreducible,
    leftmost_redex,
    normal_form_confluent,
    relation_instances,
    rewrite_neighbors,
)
from .twocomplex import (
    AtomicStep,
    DirectedPath,
    DirectedTwoComplex,
    HomotopyResult,
    QscReport,
    TwoCell,
    TwoPath,
    build_kn,
    check_qsc,
    gamma_sample,
    homotopy_search,
    path_from_labels,
    twopath_to_json_list,
)
from .words import EMPTY, Word, format_word, parse_word, words_up_to

__version__ = "0.1.0"

__all__ = [
    "AtomicStep",
    "BUILTIN_NAMES",
    "BudgetExceededError",
    "BushyReport",
    "CayleyBall",
    "DensityReport",
    "DirectedPath",
    "DirectedTwoComplex",
    "EMPTY",
    "Edge",
    "EmbeddingReport",
    "EqualityVerdict",
    "ExtendedDistance",
    "GrowthTable",
    "HomotopyResult",
    "INF",
    "IsometryReport",
    "MX_ALPHABET",
    "MembershipOracle",
    "Presentation",
    "PresentationError",
    "QiError",
    "QiSpec",
    "QscReport",
    "QuasimetricReport",
    "Relation",
    "RewriteError",
    "RuleInstance",
    "RuleOracle",
    "SccClass",
    "SchutzenbergerGraph",
    "Status",
    "TwoCell",
    "TwoPath",
    "TypeReport",
    "UNKNOWN",
    "UndirectedView",
    "VertexMap",
    "Word",
    "apply_instance",
    "apply_relation_once",
    "ball_to_dot",
    "ball_to_json",
    "ball_to_json_dict",
    "build_kn",
    "builtin",
    "check_bushy_hypotheses",
    "check_qsc",
    "check_quasi_dense",
    "check_quasimetric",
    "dehn_sample",
    "distance",
    "enumerate_ball",
    "equality_search",
    "f2_ball",
    "format_word",
    "gamma_sample",
    "homotopy_search",
    "is_irreducible",
    "is_mx_normal_form",
    "leftmost_redex",
    "m_bound",
    "mx_ball",
    "mx_isometry_check",
    "mx_normal_form",
    "mx_presentation",
    "mx_successors",
    "mx_word_problem",
    "normal_form_confluent",
    "parse_oracle",
    "parse_presentation",
    "parse_vertex_map",
    "parse_word",
    "path_from_labels",
    "quasi_inverse",
    "quasi_inverse_constants",
    "relation_instances",
    "rewrite_neighbors",
    "schutzenberger_graph",
    "search_type_witness",
    "serialize_presentation",
    "serialize_vertex_map",
    "strongly_connected_components",
    "twopath_to_json_list",
    "type_leq",
    "undirected_view",
    "verify_qi_embedding",
    "words_up_to",
]
