#!/usr/bin/env python
"""Farthest point sampling (greedy k-center) on point clouds."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from src.core.errors import DomainError
from src.domain.mm.spaces import MetricKind
from src.domain.sampling.clouds import PointCloud, Seed, make_rng

logger = logging.getLogger(__name__)


def distances_to(cloud: PointCloud, index: int, metric: MetricKind) -> np.ndarray:
    """Distances from point ``index`` to every point of the cloud."""
    coords = cloud.coords
    if MetricKind(metric) is MetricKind.GEODESIC:
        return np.arccos(np.clip(coords @ coords[index], -1.0, 1.0))
    return np.linalg.norm(coords - coords[index], axis=1)


@dataclass(frozen=True)
class FPSResult:
    indices: np.ndarray
    # radii[t] is the distance of pick t to the points picked before it
    radii: np.ndarray


def farthest_point_selection(
    cloud: PointCloud,
    k: int,
    metric: MetricKind,
    seed: Union[Seed, np.random.Generator],
    first: Optional[int] = None,
) -> FPSResult:
    N = cloud.size
    if k < 1 or k > N:
        raise DomainError(f"farthest point sampling needs 1 <= k <= {N}, got k={k}")
    if first is None:
        first = int(make_rng(seed).integers(N))
    elif not 0 <= first < N:
        raise DomainError(f"first index {first} is outside the cloud")
    indices = np.empty(k, dtype=np.int64)
    radii = np.empty(k, dtype=np.float64)
    indices[0] = first
    radii[0] = np.inf
    nearest = distances_to(cloud, first, metric)
    nearest[first] = -np.inf
    for t in range(1, k):
        # argmax returns the lowest index among ties
        pick = int(np.argmax(nearest))
        indices[t] = pick
        radii[t] = nearest[pick]
        nearest = np.minimum(nearest, distances_to(cloud, pick, metric))
        nearest[indices[: t + 1]] = -np.inf
    logger.debug("FPS picked %s of %s points (first=%s)", k, N, first)
    return FPSResult(indices=indices, radii=radii)


def farthest_point_sample(
    cloud: PointCloud,
    k: int,
    metric: MetricKind,
    seed: Union[Seed, np.random.Generator],
    first: Optional[int] = None,
) -> np.ndarray:
    """Indices picked by FPS: seeded first point, then the farthest from the picked set."""
    return farthest_point_selection(cloud, k, metric, seed, first=first).indices


__all__ = ["FPSResult", "distances_to", "farthest_point_selection", "farthest_point_sample"]
