#!/usr/bin/env python
"""
Point clouds on spheres, seeded samplers and conversion to mm-spaces.

All randomness goes through numpy's PCG64 (``numpy.random.default_rng``);
child seeds are split with ``SeedSequence([seed, *keys])`` so a trial's
stream depends only on the base seed and its keys.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from config import Config
from src.core.errors import DomainError
from src.domain.mm.spaces import FiniteMMSpace, MetricKind, pairwise_distances

logger = logging.getLogger(__name__)

Seed = int
SEED_MAX = 2 ** 64 - 1


def check_seed(seed: Seed) -> int:
    seed = int(seed)
    if seed < 0 or seed > SEED_MAX:
        raise DomainError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return seed


def make_rng(seed: Union[Seed, np.random.Generator]) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(check_seed(seed))


def derive_seed(seed: Seed, *keys: int) -> int:
    """Child seed for ``keys`` (trial index, sample size, ...) under ``seed``."""
    sequence = np.random.SeedSequence([check_seed(seed), *[int(k) for k in keys]])
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


@dataclass(frozen=True)
class PointCloud:
    coords: np.ndarray
    on_sphere: bool = True

    def __post_init__(self) -> None:
        coords = np.atleast_2d(np.asarray(self.coords, dtype=np.float64))
        if coords.shape[0] < 1:
            raise DomainError("a point cloud needs at least one point")
        if self.on_sphere:
            worst = float(np.max(np.abs(np.linalg.norm(coords, axis=1) - 1.0)))
            if worst > Config.UNIT_NORM_TOL:
                raise DomainError(f"points are off the unit sphere (max deviation {worst:.3g})")
        coords = coords.copy()
        coords.setflags(write=False)
        object.__setattr__(self, "coords", coords)

    @property
    def size(self) -> int:
        return int(self.coords.shape[0])

    @property
    def ambient_dim(self) -> int:
        return int(self.coords.shape[1])

    @property
    def sphere_dim(self) -> int:
        return self.ambient_dim - 1

    def subset(self, indices: Sequence[int]) -> "PointCloud":
        return PointCloud(coords=self.coords[np.asarray(indices, dtype=np.int64)], on_sphere=self.on_sphere)


def _normalized_gaussians(rng: np.random.Generator, count: int, ambient: int) -> np.ndarray:
    points = rng.standard_normal((count, ambient))
    norms = np.linalg.norm(points, axis=1)
    bad = norms < Config.DEGENERATE_NORM_TOL
    while np.any(bad):
        points[bad] = rng.standard_normal((int(bad.sum()), ambient))
        norms = np.linalg.norm(points, axis=1)
        bad = norms < Config.DEGENERATE_NORM_TOL
    return points / norms[:, None]


def sample_sphere_uniform(n: int, N: int, seed: Union[Seed, np.random.Generator]) -> PointCloud:
    """``N`` i.i.d. uniform points on S^n (normalized standard Gaussians)."""
    if n < 0:
        raise DomainError(f"sphere dimension must be >= 0, got {n}")
    if N < 1:
        raise DomainError(f"need at least one sample, got N={N}")
    rng = make_rng(seed)
    return PointCloud(coords=_normalized_gaussians(rng, int(N), int(n) + 1))


def distance_matrix(cloud: PointCloud, metric: MetricKind) -> np.ndarray:
    return pairwise_distances(cloud.coords, MetricKind(metric))


def cloud_to_space(
    cloud: PointCloud, metric: MetricKind, weights: Optional[np.ndarray] = None
) -> FiniteMMSpace:
    if weights is not None:
        weights = np.asarray(weights, dtype=np.float64)
        weights = weights / weights.sum()
    return FiniteMMSpace.from_points(cloud.coords, metric=MetricKind(metric), weights=weights)


__all__ = [
    "Seed",
    "SEED_MAX",
    "check_seed",
    "make_rng",
    "derive_seed",
    "PointCloud",
    "sample_sphere_uniform",
    "distance_matrix",
    "cloud_to_space",
]
