"""Numerical audit and exploration toolkit for a planar extremal problem:
maximize p^gamma * r_1 * ... * r_n over systems of non-overlapping domains,
where p is the inner radius of a center domain at the origin and the r_k
are inner radii of satellite domains at points of the unit circle.

The package recomputes every stated constant of the underlying derivation
(claim registry), replays the proof skeleton step by step (audit), bounds
the functional from below with concrete disk systems, and draws the
quadratic differential whose trajectories carve out the extremal
configuration.
"""

from .analysis import (
    AuditReport,
    AuditStep,
    ClaimRecord,
    ConstrainedMax,
    CriticalPoints,
    Extremum,
    FrontierResult,
    audit,
    claim_registry,
    constrained_psi_product_max,
    frontier,
    golden_section_max,
    scan_extrema,
)
from .disks import (
    AngleSystem,
    DiskConfiguration,
    KuzminaCheck,
    SearchResult,
    functional_value,
    kuzmina_check,
    lavrentiev_check,
    maximize_over_disks,
    random_configuration,
    symmetric_configuration,
)
from .errors import (
    AmbiguousDirectionError,
    DomainError,
    EvaluationError,
    InfeasibleConfigurationError,
    PoleProximityError,
)
from .quad_diff import (
    QDInstance,
    Trajectory,
    ZeroPoleData,
    hausdorff_distance,
    q_eval,
    render_svg,
    trace_trajectory,
    write_trajectory_csv,
    zeros_and_poles,
)
from .scalars import (
    PRODUCT_BOUND_CONSTANT,
    Params,
    SigmaPair,
    case_a_bound,
    chord,
    dlog_i0_printed,
    dlog_i0_printed_terms,
    dlog_i0_termwise,
    dlog_i0_termwise_terms,
    dlog_i0_true,
    dlog_i0_upper_bound,
    dlog_i0_upper_bound_terms,
    i0,
    kuzmina_bound,
    lemma1_threshold,
    log_i0,
    log_psi_second_derivative,
    psi,
)

__version__ = "0.1.0"

__all__ = [
    "AmbiguousDirectionError",
    "AngleSystem",
    "AuditReport",
    "AuditStep",
    "ClaimRecord",
    "ConstrainedMax",
    "CriticalPoints",
    "DiskConfiguration",
    "DomainError",
    "EvaluationError",
    "Extremum",
    "FrontierResult",
    "InfeasibleConfigurationError",
    "KuzminaCheck",
    "PRODUCT_BOUND_CONSTANT",
    "Params",
    "PoleProximityError",
    "QDInstance",
    "SearchResult",
    "SigmaPair",
    "Trajectory",
    "ZeroPoleData",
    "audit",
    "case_a_bound",
    "chord",
    "claim_registry",
    "constrained_psi_product_max",
    "dlog_i0_printed",
    "dlog_i0_printed_terms",
    "dlog_i0_termwise",
    "dlog_i0_termwise_terms",
    "dlog_i0_true",
    "dlog_i0_upper_bound",
    "dlog_i0_upper_bound_terms",
    "frontier",
    "functional_value",
    "golden_section_max",
    "hausdorff_distance",
    "i0",
    "kuzmina_bound",
    "kuzmina_check",
    "lavrentiev_check",
    "lemma1_threshold",
    "log_i0",
    "log_psi_second_derivative",
    "maximize_over_disks",
    "psi",
    "q_eval",
    "random_configuration",
    "render_svg",
    "scan_extrema",
    "symmetric_configuration",
    "trace_trajectory",
    "write_trajectory_csv",
    "zeros_and_poles",
]
