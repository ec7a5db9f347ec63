"""Distance distributions, 1D Wasserstein on (R+, Lambda_q) and the DLB/SLB/TLB hierarchy."""

from src.domain.bounds.distributions import (
    Discrete1DDistribution,
    global_distance_distribution,
    local_distance_distribution,
)
from src.domain.bounds.hierarchy import ORDER_TOL, HierarchyReport, hierarchy_report, ordering_holds
from src.domain.bounds.lower_bounds import (
    SpaceLike,
    TLBResult,
    diameter_p,
    distance_distribution,
    dlb,
    slb,
    tlb,
    tlb_cost_matrix,
    tlb_homogeneous,
)
from src.domain.bounds.wasserstein import QuantileSource, check_closed_form, wasserstein_1d_lambda_q

__all__ = [
    "ORDER_TOL",
    "Discrete1DDistribution",
    "HierarchyReport",
    "QuantileSource",
    "SpaceLike",
    "TLBResult",
    "check_closed_form",
    "diameter_p",
    "distance_distribution",
    "dlb",
    "global_distance_distribution",
    "hierarchy_report",
    "local_distance_distribution",
    "ordering_holds",
    "slb",
    "tlb",
    "tlb_cost_matrix",
    "tlb_homogeneous",
    "wasserstein_1d_lambda_q",
]
