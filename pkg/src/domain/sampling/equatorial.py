#!/usr/bin/env python
"""
Equatorial map S^n -> S^m (normalize the leading m+1 coordinates) and the
empirical couplings it induces, plus the Gaussian projection coupling.
"""

from __future__ import annotations

import logging
from typing import Optional, Tuple, Union

import numpy as np

from config import Config
from src.core.errors import DomainError, PreconditionError
from src.domain.mm.correlation import paired_cross_correlation
from src.domain.mm.spaces import Coupling, FiniteMMSpace, MetricKind
from src.domain.sampling.clouds import PointCloud, Seed, make_rng, sample_sphere_uniform

logger = logging.getLogger(__name__)


def _check_dims(m: int, n: int) -> None:
    if m < 0 or m > n:
        raise DomainError(f"equatorial map needs 0 <= m <= n, got m={m}, n={n}")


def equatorial_map(y, m: int) -> Optional[np.ndarray]:
    """Image of the unit vector ``y`` on S^m, or ``None`` when ``y`` lies on the degenerate set."""
    y = np.asarray(y, dtype=np.float64).reshape(-1)
    _check_dims(m, y.size - 1)
    if abs(float(np.linalg.norm(y)) - 1.0) > Config.UNIT_NORM_TOL:
        raise DomainError("equatorial map expects a unit vector")
    head = y[: m + 1]
    norm = float(np.linalg.norm(head))
    if norm < Config.DEGENERATE_NORM_TOL:
        return None
    return head / norm


def equatorial_project(coords: np.ndarray, m: int) -> Tuple[np.ndarray, np.ndarray]:
    """Row-wise equatorial map; returns (projected rows, degenerate mask).

    Degenerate rows are left as the first basis vector.
    """
    coords = np.atleast_2d(np.asarray(coords, dtype=np.float64))
    _check_dims(m, coords.shape[1] - 1)
    head = coords[:, : m + 1]
    norms = np.linalg.norm(head, axis=1)
    degenerate = norms < Config.DEGENERATE_NORM_TOL
    safe = np.where(degenerate, 1.0, norms)
    projected = head / safe[:, None]
    if np.any(degenerate):
        projected[degenerate] = 0.0
        projected[degenerate, 0] = 1.0
    return projected, degenerate


def sample_equatorial_source(
    n: int, m: int, N: int, seed: Union[Seed, np.random.Generator]
) -> PointCloud:
    """Uniform sample on S^n with degenerate points for the map to S^m resampled away."""
    _check_dims(m, n)
    rng = make_rng(seed)
    coords = np.array(sample_sphere_uniform(n, N, rng).coords)
    _, degenerate = equatorial_project(coords, m)
    while np.any(degenerate):
        logger.warning("Resampling %s degenerate points for the equatorial map S^%s -> S^%s", int(degenerate.sum()), n, m)
        coords[degenerate] = sample_sphere_uniform(n, int(degenerate.sum()), rng).coords
        _, degenerate = equatorial_project(coords, m)
    return PointCloud(coords=coords)


def equatorial_coupling_empirical(
    cloud: PointCloud, m: int, metric: MetricKind = MetricKind.EUCLIDEAN
) -> Tuple[FiniteMMSpace, FiniteMMSpace, Coupling]:
    """Pairs ``(e(y_i), y_i)`` with mass 1/N each, as a coupling of two finite spaces."""
    projected, degenerate = equatorial_project(cloud.coords, m)
    if np.any(degenerate):
        raise PreconditionError(f"{int(degenerate.sum())} samples lie on the degenerate set of the equatorial map")
    X = FiniteMMSpace.from_points(projected, metric=metric)
    Y = FiniteMMSpace.from_points(cloud.coords, metric=metric)
    return X, Y, Coupling.diagonal(np.full(cloud.size, 1.0 / cloud.size))


def gaussian_projection_J(m: int, n: int, N: int, seed: Union[Seed, np.random.Generator]) -> float:
    """Empirical J of the coupling pairing a standard Gaussian in R^(n+1) with its leading (m+1) block."""
    _check_dims(m, n)
    if N < 2:
        raise DomainError(f"need at least two samples, got N={N}")
    g = make_rng(seed).standard_normal((int(N), n + 1))
    return paired_cross_correlation(g[:, : m + 1], g).J


__all__ = [
    "equatorial_map",
    "equatorial_project",
    "sample_equatorial_source",
    "equatorial_coupling_empirical",
    "gaussian_projection_J",
]
