"""Threshold-graph local moves, exact homomorphism counting, and extremal search."""

from threshmax.graphs import (
    Graph,
    Hypergraph,
    ParseError,
    add_dominating,
    add_isolated,
    complement,
    complete_graph,
    connected_components,
    cycle_graph,
    disjoint_union,
    double_graph,
    edge_density,
    empty_graph,
    induced,
    parse_graph,
    parse_hypergraph,
    path_graph,
    relabel,
    serialize_graph,
    serialize_hypergraph,
    star_graph,
)
from threshmax.homcount import (
    BudgetError,
    hom_count,
    hom_count_hyper,
    hom_count_naive,
    hom_density,
    injective_hom_count,
    iter_homomorphisms,
)
from threshmax.threshold import (
    BlockStructure,
    CreationSequence,
    LimitThreshold,
    blocks_of,
    blow_up,
    build_graph,
    chromatic_count,
    chromatic_polynomial,
    creation_sequence_of,
    effective_blocks,
    hom_count_blocks,
    is_threshold,
    limit_density,
    limit_edge_density,
    parts,
    quasi_clique,
    quasi_star,
    sequence_edge_count,
    three_part,
    to_sequence,
)
from threshmax.moves import (
    HyperMoveReport,
    MoveLog,
    dominating_set,
    forbidden_paths,
    hyper_local_move,
    hyper_thresholdize,
    is_threshold_hyper,
    local_move,
    protected_hom_count,
    thresholdize,
    unprotected_bound,
)
from threshmax.optimize import (
    DominationReport,
    FracIndepResult,
    JansonReport,
    JansonRow,
    SearchResult,
    TwoStarInstance,
    all_graphs_up_to_iso,
    alpha_star,
    domination_exponent,
    independence_number,
    janson_bound,
    janson_ratio_report,
    limit_search,
    search_all_max,
    search_threshold_max,
    two_star_f,
    two_star_feasible_interval,
    two_star_fprime,
    two_star_fsecond,
    two_star_no_interior_max,
    two_star_objective,
    verify_domination,
)
from threshmax.verify import CriterionResult, run_all, run_suite

__version__ = "0.1.0"
