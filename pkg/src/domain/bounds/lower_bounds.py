#!/usr/bin/env python
"""
Diameter, second and third lower bounds (DLB, SLB, TLB) for the
(p,q)-Gromov-Wasserstein distance. Inputs may be finite spaces or analytic
spheres; TLB of two finite spaces solves an exact linear OT over local
distance distributions.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from src.core.errors import DomainError, PreconditionError
from src.domain.bounds.distributions import global_distance_distribution, local_distance_distribution
from src.domain.bounds.wasserstein import QuantileSource, check_closed_form, wasserstein_1d_lambda_q
from src.domain.mm.distortion import p_diameter
from src.domain.mm.spaces import Coupling, FiniteMMSpace, lambda_q
from src.domain.spheres.analytic import QuadratureConfig, SphereSpec, sphere_diam_p
from src.infrastructure.pot import PotClient, build_default_client

logger = logging.getLogger(__name__)

SpaceLike = Union[FiniteMMSpace, SphereSpec]


def diameter_p(X: SpaceLike, p: float, cfg: Optional[QuadratureConfig] = None) -> float:
    if isinstance(X, SphereSpec):
        return sphere_diam_p(X, p, cfg)
    if isinstance(X, FiniteMMSpace):
        return p_diameter(X, p)
    raise DomainError(f"unsupported space type {type(X).__name__}")


def distance_distribution(X: SpaceLike) -> QuantileSource:
    """Global distance distribution: a discrete law for finite spaces, the sphere itself otherwise."""
    if isinstance(X, SphereSpec):
        return X
    if isinstance(X, FiniteMMSpace):
        return global_distance_distribution(X)
    raise DomainError(f"unsupported space type {type(X).__name__}")


def _node_count(cfg: Optional[QuadratureConfig]) -> Optional[int]:
    return None if cfg is None else cfg.node_count


def dlb(X: SpaceLike, Y: SpaceLike, p: float, q: float, cfg: Optional[QuadratureConfig] = None) -> float:
    """Lambda_q(diam_p X, diam_p Y)."""
    return float(lambda_q(diameter_p(X, p, cfg), diameter_p(Y, p, cfg), q))


def slb(X: SpaceLike, Y: SpaceLike, p: float, q: float, cfg: Optional[QuadratureConfig] = None) -> float:
    """1D Wasserstein on (R+, Lambda_q) between the two global distance distributions."""
    if isinstance(X, SphereSpec) and X == Y:
        check_closed_form(p, q)
        return 0.0
    return wasserstein_1d_lambda_q(distance_distribution(X), distance_distribution(Y), p, q, _node_count(cfg))


@dataclass(frozen=True)
class TLBResult:
    value: float
    coupling: Optional[Coupling]
    cost: Optional[np.ndarray]


def tlb_cost_matrix(X: FiniteMMSpace, Y: FiniteMMSpace, p: float, q: float) -> np.ndarray:
    """c[i, j] = W(dh_X(i), dh_Y(j))^p, filled row by row."""
    check_closed_form(p, q)
    local_x = [local_distance_distribution(X, i) for i in range(X.n_points)]
    local_y = [local_distance_distribution(Y, j) for j in range(Y.n_points)]
    cost = np.empty((X.n_points, Y.n_points), dtype=np.float64)
    for i, dh_i in enumerate(local_x):
        for j, dh_j in enumerate(local_y):
            cost[i, j] = wasserstein_1d_lambda_q(dh_i, dh_j, p, q) ** p
    return cost


def tlb(
    X: FiniteMMSpace,
    Y: FiniteMMSpace,
    p: float,
    q: float,
    client: Optional[PotClient] = None,
) -> TLBResult:
    """Third lower bound of two finite spaces and the optimal plan of its linear relaxation."""
    if not (isinstance(X, FiniteMMSpace) and isinstance(Y, FiniteMMSpace)):
        raise PreconditionError("tlb needs two finite spaces")
    if math.isinf(p):
        raise PreconditionError("tlb needs a finite p")
    cost = tlb_cost_matrix(X, Y, p, q)
    client = client or build_default_client()
    plan, value = client.emd(cost, X.weights, Y.weights)
    logger.debug("TLB n=%s m=%s p=%s q=%s value=%.6g", X.n_points, Y.n_points, p, q, value)
    return TLBResult(
        value=max(value, 0.0) ** (1.0 / p),
        coupling=Coupling(gamma=plan, mu=X.weights, nu=Y.weights),
        cost=cost,
    )


def tlb_homogeneous(sphere: SphereSpec, Y: SpaceLike, p: float, q: float, cfg: Optional[QuadratureConfig] = None) -> float:
    """TLB when one side is a sphere: every local distribution of S^n equals the global one,
    so the cost no longer depends on the sphere's point and any coupling is optimal."""
    check_closed_form(p, q)
    if isinstance(Y, SphereSpec):
        return slb(sphere, Y, p, q, cfg)
    nodes = _node_count(cfg)
    total = 0.0
    for j in range(Y.n_points):
        if Y.weights[j] > 0:
            total += Y.weights[j] * wasserstein_1d_lambda_q(sphere, local_distance_distribution(Y, j), p, q, nodes) ** p
    return total ** (1.0 / p)


__all__ = [
    "SpaceLike",
    "TLBResult",
    "diameter_p",
    "distance_distribution",
    "dlb",
    "slb",
    "tlb",
    "tlb_cost_matrix",
    "tlb_homogeneous",
]
