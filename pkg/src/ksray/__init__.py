"""ksray: exact construction and verification of Kochen-Specker ray sets
and the state-independent contextuality inequalities they generate, in
every finite dimension d >= 3.

The package proves, by exact computation, the quantitative facts about
these sets: classical bounds of the inequalities over all binary
assignments, quantum operator identities, existence or impossibility of
KS value assignments, ray counts of the block constructions, and the
uniqueness of the 18-ray realization up to a global unitary.
"""

from .exact_linalg import (
    Rational,
    RatMatrix,
    RayVec,
    identity,
    inner_product,
    mat_mul,
    norm_sq,
    projector,
    rational,
    rational_str,
    ray,
    scalar_identity_check,
    trace,
    weighted_operator,
)
from .graphs import (
    Graph,
    base_graph_9,
    cliques_of_size,
    disjoint_edge_cover_exists,
    export_dot,
    graph_from_edges,
    graph_from_json,
    graph_to_json,
    independent_triples,
    line_graph,
)
from .ray_sets import (
    Block,
    BlockLayout,
    Decomposition,
    RaySet,
    build_13ray,
    build_18ray,
    build_25ray,
    build_for_dimension,
    build_general,
    expected_ray_count,
    gram_signature,
    optimal_decomposition,
    orthogonality_graph,
    rays_at_vertex,
    rayset_from_json,
    rayset_to_json,
    subset,
)
from .quadform import (
    Assignment,
    QuadForm,
    build_hexagon,
    build_inequality,
    build_L3,
    build_L4,
    build_L5,
    build_L5prime,
    build_Ld,
    evaluate,
    make_form,
    quadform_from_json,
    quadform_to_json,
    quantum_operator,
    rename_variables,
)
from .bounds import (
    EXHAUSTIVE_CAP,
    BoundResult,
    bound_result_to_json,
    continuous_probe,
    coordinate_ascent,
    gray_assignment,
    gray_checkpoint_values,
    max_block_dp,
    max_branch_bound,
    max_exhaustive,
    mixture_value,
)
from .ks_assign import (
    Basis,
    KSConstraints,
    enumerate_bases,
    find_ks_assignments,
    full_constraints,
    max_over_constrained,
    partial_constraints,
)
from .realize import (
    FloatRaySet,
    RealizationReport,
    basis_degenerate,
    compare_gram,
    float_rayset,
    realize_graph,
    report_to_json,
    residual,
    squared_overlaps,
)

__version__ = "0.1.0"
