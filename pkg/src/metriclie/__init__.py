"""Numerical analysis of homogeneous Riemannian models given by Lie-algebraic data."""

__version__ = "0.1.0"

from .liealg import (  # noqa: E402
    Check,
    InvariantError,
    StructureTensor,
    Subspace,
    ad_exponential,
    ad_matrix,
    bracket,
    is_abelian,
    is_ideal,
    killing_form,
    trace_ad,
    unimodular_kernel,
    validate_structure,
)
from .homogeneous import (  # noqa: E402
    HomogeneousModel,
    ModelValidationError,
    SplitPair,
    build_model,
    make_split,
    project_h,
    project_m,
    restricted_ad,
)
from .curvature import RicciResult, ric_star_identity, ricci, ricci_matrix, z_vector  # noqa: E402
from .geodesic import (  # noqa: E402
    GoCertificate,
    GoSurvey,
    ProbePlan,
    go_certificate,
    go_survey,
    naturally_reductive_check,
    skew_symmetry_audit,
    unimodularity_audit,
)
from .killing import (  # noqa: E402
    OrbitPlan,
    critical_point_residual,
    length_at_origin,
    length_profile,
    parallel_candidate_report,
    verify_abelian_ideal_theorem,
)
from .catalog import catalog_entries, get_entry, product_model, symmetric_pair_check  # noqa: E402
from .modelfile import emit_model, parse_model  # noqa: E402
