"""Metric-measure spaces, couplings, Lambda_q and the (p,q)-distortion."""

from src.domain.mm.correlation import (
    CrossCorrelation,
    cross_correlation,
    dis42_via_inner_products,
    gram_fourth_moment,
    paired_cross_correlation,
)
from src.domain.mm.distortion import (
    CouplingValidation,
    distortion_pq,
    p_diameter,
    require_finite_p,
    support_indices,
    validate_coupling,
)
from src.domain.mm.objective import GWObjective, exact_line_step
from src.domain.mm.spaces import (
    INF,
    Coupling,
    FiniteMMSpace,
    MetricKind,
    PqParams,
    lambda_q,
    lambda_q_pow,
    pairwise_distances,
)

__all__ = [
    "INF",
    "Coupling",
    "CouplingValidation",
    "CrossCorrelation",
    "FiniteMMSpace",
    "GWObjective",
    "MetricKind",
    "PqParams",
    "cross_correlation",
    "dis42_via_inner_products",
    "distortion_pq",
    "exact_line_step",
    "gram_fourth_moment",
    "lambda_q",
    "lambda_q_pow",
    "p_diameter",
    "paired_cross_correlation",
    "pairwise_distances",
    "require_finite_p",
    "support_indices",
    "validate_coupling",
]
