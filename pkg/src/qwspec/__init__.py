"""Spectral analysis of coined quantum walks on weighted graphs."""

from .errors import (
    AssumptionViolated,
    ConnectivityWarning,
    DimensionMismatch,
    DomainError,
    DuplicateEdge,
    EigenresidualError,
    InputError,
    IsolatedVertex,
    ModelInvariantViolation,
    NumericalError,
    OutOfRange,
    ParseError,
    QwspecError,
    RegimeWarning,
    SelfLoopForbidden,
)
from .graphs import (
    Digraph,
    WeightFunction,
    WeightValidation,
    complete_graph,
    cycle_graph,
    grover_weights,
    load_graph,
    parse_edge_list,
    parse_graph,
    parse_graph_json,
    path_graph,
    random_connected_graph,
    random_tree,
    random_weights,
    star_graph,
    validate_weights,
)
from .operators import (
    WalkModel,
    build_abstract_model,
    build_model,
    discriminant_transition_check,
    model_from_json_dict,
    model_residuals,
    model_to_json_dict,
)
from .spectral import (
    DiscriminantEigenspace,
    EigItem,
    MultiplicityCounts,
    SpectralReport,
    Verdict,
    VerifyTolerances,
    birth_eigensystem,
    discriminant_spectrum,
    eigenbases_json_dict,
    full_report,
    inherited_eigensystem,
    joukowsky,
    joukowsky_preimage,
    oracle_eigensystem,
    pm1_multiplicities,
    report_to_csv_text,
    verify_identities,
)
from .subspaces import (
    Subspace,
    SubspaceComparison,
    apply_map,
    complement_within,
    generalized_kernel,
    image,
    intersect,
    kernel,
    subspace_equal,
)

__version__ = "0.1.0"
