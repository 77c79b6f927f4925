"""Crown configurations in linear r-uniform hypergraphs."""

from .bounds import (
    BoundReport,
    NotApplicableError,
    av_upper,
    bound_report,
    double_count_identity,
    edge_weight_lower,
    floor_bound,
    grs_bounds,
    ineq3_check,
    main_upper,
    p2_bound,
    p3_claim_check,
    twz_upper,
    weighted_check,
    zbw_lower,
    zbw_upper,
)
from .canon import CanonicalForm, canonical_form, canonical_graph
from .crown import (
    CrownEmbedding,
    DegreeCertificate,
    GreedyStuck,
    degree_certificate,
    exact_crown_with_base,
    find_crown,
    greedy_crown,
    is_crown_free,
    k_of_edge,
)
from .generators import (
    cstar_graph,
    crown_graph,
    greedy_crown_free,
    matching_graph,
    random_linear,
    star_graph,
)
from .hypergraph import LinearRGraph, new_graph, parse_graph, serialize_graph
from .search import Forbidden, SearchBudgetExceeded, SearchOptions, SearchResult, max_edges, verify_table

__version__ = "0.1.0"
