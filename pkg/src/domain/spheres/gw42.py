#!/usr/bin/env python
"""
Closed forms for the (4,2)-Gromov-Wasserstein distance between Euclidean
spheres and the distortion of the equatorial coupling.

With ``R = E|y_A|`` the mean norm of the leading (m+1)-block of a uniform
point of S^n, the equatorial coupling is optimal and

    d(S^m_E, S^n_E) = 2^(-1/2) [1/(m+1) + 1/(n+1) - 2 R^2 / (m+1)]^(1/4).
"""

from __future__ import annotations

import logging
import math
from typing import Optional

import numpy as np

from src.core.errors import DomainError
from src.domain.mm.spaces import MetricKind
from src.domain.sampling.equatorial import equatorial_project, sample_equatorial_source
from src.domain.sampling.clouds import make_rng
from src.domain.sampling.montecarlo import MonteCarloEstimate
from src.domain.spheres.analytic import QuadratureConfig
from src.domain.spheres.special import gamma_ratio, projection_gamma_ratio

logger = logging.getLogger(__name__)

INV_SQRT2 = 1.0 / math.sqrt(2.0)


def _check_pair(m: int, n: int) -> None:
    if m < 0:
        raise DomainError(f"sphere dimension must be >= 0, got m={m}")
    if m > n:
        raise DomainError(f"expected m <= n, got m={m}, n={n}; swap the arguments")


def mean_projection_norm(m: int, n: int) -> float:
    """``E|y_A|`` for y uniform on S^n and A the first m+1 coordinates."""
    _check_pair(m, n)
    if m == n:
        return 1.0
    return projection_gamma_ratio(m, n)


def _equatorial_bracket(m: int, n: int) -> float:
    R = mean_projection_norm(m, n)
    return max(1.0 / (m + 1) + 1.0 / (n + 1) - 2.0 * R * R / (m + 1), 0.0)


def exact_gw42_euclidean(m: int, n: int) -> float:
    """d_GW(4,2)(S^m_E, S^n_E), attained by the equatorial coupling."""
    _check_pair(m, n)
    if m == n:
        return 0.0
    return INV_SQRT2 * _equatorial_bracket(m, n) ** 0.25


def equatorial_dis42_euclidean(m: int, n: int) -> float:
    """(4,2)-distortion of the equatorial coupling between S^m_E and S^n_E."""
    _check_pair(m, n)
    if m == n:
        return 0.0
    return (4.0 * _equatorial_bracket(m, n)) ** 0.25


def gw42_closed_form_consecutive(m: int) -> float:
    """d_GW(4,2)(S^m_E, S^(m+1)_E) in its simplified form."""
    if m < 0:
        raise DomainError(f"sphere dimension must be >= 0, got m={m}")
    ratio = gamma_ratio((m + 2) / 2.0, (m + 1) / 2.0)
    bracket = (2 * m + 3) / ((m + 1) * (m + 2)) - (2.0 / (m + 1)) ** 3 * ratio ** 4
    return INV_SQRT2 * max(bracket, 0.0) ** 0.25


def gw42_closed_form_gap_two(m: int) -> float:
    """d_GW(4,2)(S^m_E, S^(m+2)_E); rational in m."""
    if m < 0:
        raise DomainError(f"sphere dimension must be >= 0, got m={m}")
    bracket = 1.0 / ((m + 1) * (m + 3)) + 1.0 / ((m + 2) ** 2 * (m + 3))
    return 2.0 ** -0.25 * bracket ** 0.25


def gw42_asymptote_fixed_m(m: int) -> float:
    """Limit of d_GW(4,2)(S^m_E, S^n_E) as n grows with m fixed."""
    if m < 0:
        raise DomainError(f"sphere dimension must be >= 0, got m={m}")
    return INV_SQRT2 * (1.0 / (m + 1)) ** 0.25


def _pair_geodesics(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.arccos(np.clip(np.sum(a * b, axis=1), -1.0, 1.0))


def equatorial_dis42_geodesic(m: int, n: int, cfg: Optional[QuadratureConfig] = None) -> MonteCarloEstimate:
    """(4,2)-distortion of the equatorial coupling between S^m_G and S^n_G.

    Exact for (0, 1) and m = n; otherwise estimated from ``cfg.mc_samples``
    independent pairs of coupled points.
    """
    _check_pair(m, n)
    if m == n:
        return MonteCarloEstimate.exact(0.0)
    if (m, n) == (0, 1):
        return MonteCarloEstimate.exact(0.2 ** 0.25 * math.pi)
    cfg = cfg or QuadratureConfig()
    rng = make_rng(cfg.seed)
    count = cfg.mc_samples
    y = sample_equatorial_source(n, m, count, rng).coords
    y_prime = sample_equatorial_source(n, m, count, rng).coords
    x, _ = equatorial_project(y, m)
    x_prime, _ = equatorial_project(y_prime, m)
    gap = _pair_geodesics(x, x_prime) ** 2 - _pair_geodesics(y, y_prime) ** 2
    estimate = MonteCarloEstimate.of_fourth_root_mean(gap * gap)
    logger.info(
        "Geodesic equatorial distortion S^%s -> S^%s: %.6f +/- %.2g (%s pairs)",
        m, n, estimate.value, estimate.std_error, count,
    )
    return estimate


def equatorial_upper_bound(
    m: int, n: int, metric: MetricKind = MetricKind.EUCLIDEAN, cfg: Optional[QuadratureConfig] = None
) -> MonteCarloEstimate:
    """Half the equatorial distortion: an upper bound for d_GW(4,2) in either metric."""
    m, n = min(m, n), max(m, n)
    if MetricKind(metric) is MetricKind.EUCLIDEAN:
        return MonteCarloEstimate.exact(exact_gw42_euclidean(m, n))
    return equatorial_dis42_geodesic(m, n, cfg).scaled(0.5)


__all__ = [
    "mean_projection_norm",
    "exact_gw42_euclidean",
    "equatorial_dis42_euclidean",
    "gw42_closed_form_consecutive",
    "gw42_closed_form_gap_two",
    "gw42_asymptote_fixed_m",
    "equatorial_dis42_geodesic",
    "equatorial_upper_bound",
]
