"""Certified Lovasz theta brackets, odd-girth bounds and Ramsey colouring checks."""

from .bounds import (
    GirthBoundReport,
    RamseyBoundInputs,
    alon_kahale_bound,
    cycle_theta_asymptotic,
    cycle_theta_exact,
    derive_g_bound,
    elementary_inequality_audit,
    girth_excess,
    girth_theta_bound_check,
    vertex_transitive_product_check,
)
from .chebyshev import (
    cheb_coefficients,
    cheb_eval_closed,
    cheb_eval_recurrence,
    cheb_lower_bound,
)
from .colourings import (
    EdgeColouring,
    binary_colouring,
    brute_force_L,
    capacity_witness,
    colour_class,
    local_search_colouring,
    shortest_mono_odd_cycle,
    theta_pipeline,
)
from .graphs import (
    CycleWitness,
    Graph,
    GraphError,
    OddGirth,
    ODD_GIRTH_INFINITE,
    build_graph,
    chromatic_number_small,
    clique_number,
    complement,
    disjoint_union,
    edge_intersection,
    edge_union,
    graph_from_name,
    independence_number,
    is_bipartite,
    odd_girth,
    read_graph_text,
    strong_product,
    write_graph_text,
)
from .linalg import EigResult, JacobiError, SymmetricMatrix, eig_symmetric
from .theta import (
    CertificateError,
    OrthonormalRepresentation,
    ThetaIterationLimit,
    ThetaResult,
    gram_lambda1_lower_bound,
    gram_matrix,
    handle_value,
    solve_theta,
    tensor_representation,
    validate_representation,
    verify_submultiplicativity,
)

__version__ = "0.1.0"
