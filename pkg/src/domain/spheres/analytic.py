#!/usr/bin/env python
"""
Analytic spheres S^n with the uniform measure: distance distributions,
their generalized inverses and p-diameters.

For n >= 1 the distance between two uniform points has
``(1 - cos d_G) / 2 = (d_E / 2)^2 ~ Beta(n/2, n/2)``, so both CDFs are
regularized incomplete beta functions and the quantiles come from its
inverse. S^0 = {-1, +1} has the two-point step distribution.
"""

from __future__ import annotations

import logging
import math
from typing import Any, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.special import betainc, betaincinv

from config import Config
from src.core.errors import DomainError
from src.domain.mm.spaces import MetricKind
from src.domain.spheres.special import gauss_legendre

logger = logging.getLogger(__name__)

_RANGE_TOL = 1e-12


class QuadratureConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    node_count: int = Field(default_factory=lambda: Config.QUADRATURE_NODES, ge=16)
    mc_samples: int = Field(default_factory=lambda: Config.MC_SAMPLES, ge=2)
    seed: int = Field(default_factory=lambda: Config.GW_SPHERES_SEED, ge=0)


class SphereSpec(BaseModel):
    """S^dim with the geodesic or the chordal (Euclidean) metric."""

    model_config = ConfigDict(frozen=True)

    dim: int = Field(ge=0)
    metric: MetricKind = MetricKind.EUCLIDEAN

    @property
    def diameter(self) -> float:
        return math.pi if self.metric is MetricKind.GEODESIC else 2.0

    @property
    def label(self) -> str:
        suffix = "G" if self.metric is MetricKind.GEODESIC else "E"
        return f"S{self.dim}_{suffix}"

    @property
    def breakpoints(self) -> Tuple[float, ...]:
        """Levels in [0, 1] where the quantile function may jump."""
        return (0.0, 0.5, 1.0) if self.dim == 0 else (0.0, 1.0)

    @property
    def half_dim(self) -> float:
        return self.dim / 2.0

    def cdf(self, t: Any):
        return sphere_cdf(self, t)

    def quantile(self, u: Any):
        return sphere_quantile(self, u)

    def diam_p(self, p: float, cfg: Optional[QuadratureConfig] = None) -> float:
        return sphere_diam_p(self, p, cfg)

    def distance_from_beta(self, x):
        """Map ``x = (1 - cos d_G)/2`` to a distance in this sphere's metric."""
        x = np.clip(x, 0.0, 1.0)
        if self.metric is MetricKind.GEODESIC:
            return np.arccos(np.clip(1.0 - 2.0 * x, -1.0, 1.0))
        return 2.0 * np.sqrt(x)

    def beta_from_distance(self, t):
        if self.metric is MetricKind.GEODESIC:
            return (1.0 - np.cos(t)) / 2.0
        return np.clip(t * t / 4.0, 0.0, 1.0)

    def distance_from_angle(self, theta):
        if self.metric is MetricKind.GEODESIC:
            return theta
        return 2.0 * np.sin(theta / 2.0)


def _scalar_or_array(out: np.ndarray):
    return float(out) if out.ndim == 0 else out


def sphere_cdf(s: SphereSpec, t: Any):
    """Global distance distribution ``H(t) = P(d(x, x') <= t)``."""
    t = np.asarray(t, dtype=np.float64)
    D = s.diameter
    if np.any(t < -_RANGE_TOL) or np.any(t > D + _RANGE_TOL) or np.any(np.isnan(t)):
        raise DomainError(f"distance must lie in [0, {D}] for {s.label}")
    t = np.clip(t, 0.0, D)
    if s.dim == 0:
        out = np.where(t >= D, 1.0, 0.5)
    else:
        out = betainc(s.half_dim, s.half_dim, s.beta_from_distance(t))
    return _scalar_or_array(np.asarray(out, dtype=np.float64))


def sphere_quantile(s: SphereSpec, u: Any):
    """Generalized inverse ``inf{t : H(t) >= u}``."""
    u = np.asarray(u, dtype=np.float64)
    if np.any(u < 0.0) or np.any(u > 1.0) or np.any(np.isnan(u)):
        raise DomainError("quantile level must lie in [0, 1]")
    if s.dim == 0:
        out = np.where(u > 0.5, s.diameter, 0.0)
    else:
        out = s.distance_from_beta(betaincinv(s.half_dim, s.half_dim, u))
    return _scalar_or_array(np.asarray(out, dtype=np.float64))


def sphere_diam_p(s: SphereSpec, p: float, cfg: Optional[QuadratureConfig] = None) -> float:
    """``(E d(x, x')^p)^(1/p)`` for two independent uniform points.

    Integrated over the angle ``theta`` with density proportional to
    ``sin(theta)^(n-1)``, which is smooth on [0, pi].
    """
    if p < 1 or math.isnan(p):
        raise DomainError(f"p-diameter needs p >= 1, got {p}")
    D = s.diameter
    if math.isinf(p):
        return D
    if s.dim == 0:
        return D / 2.0 ** (1.0 / p)
    cfg = cfg or QuadratureConfig()
    theta, w = gauss_legendre(cfg.node_count, 0.0, math.pi)
    density = w * np.sin(theta) ** (s.dim - 1)
    moment = float(np.sum(density * s.distance_from_angle(theta) ** p) / np.sum(density))
    return moment ** (1.0 / p)


__all__ = ["QuadratureConfig", "SphereSpec", "sphere_cdf", "sphere_quantile", "sphere_diam_p"]
