#!/usr/bin/env python
"""Sampled sphere instances for the convergence and heatmap experiments."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.core.errors import DomainError
from src.domain.mm.spaces import FiniteMMSpace, MetricKind
from src.domain.sampling.clouds import PointCloud, cloud_to_space, derive_seed, sample_sphere_uniform
from src.domain.sampling.fps import farthest_point_sample
from src.domain.sampling.voronoi import voronoi_weights
from src.settings import SamplerKind, WeightKind

logger = logging.getLogger(__name__)

# sub-stream keys under a sphere's seed
_POOL, _FPS_START, _REFERENCE = 0, 1, 2


@dataclass(frozen=True)
class SampledSphere:
    dim: int
    space: FiniteMMSpace
    cloud: PointCloud
    dropped: int = 0


def sample_sphere_space(
    dim: int,
    N: int,
    *,
    sampler: SamplerKind,
    weights: WeightKind,
    metric: MetricKind,
    reference_size: int,
    seed: int,
) -> SampledSphere:
    """N landmarks on S^dim, weighted and turned into a finite mm-space.

    FPS selects from a uniform pool of ``max(reference_size, N)`` points and
    the same pool serves as the Voronoi reference, so no cell is empty.
    Random landmarks are weighted against a fresh reference sample; empty
    cells are dropped from the space.
    """
    if N < 2:
        raise DomainError(f"an instance needs at least two points, got N={N}")
    sampler, weights, metric = SamplerKind(sampler), WeightKind(weights), MetricKind(metric)

    pool: Optional[PointCloud] = None
    if sampler is SamplerKind.FPS:
        pool = sample_sphere_uniform(dim, max(int(reference_size), N), derive_seed(seed, _POOL))
        picks = farthest_point_sample(pool, N, metric, derive_seed(seed, _FPS_START))
        cloud = pool.subset(picks)
    else:
        cloud = sample_sphere_uniform(dim, N, derive_seed(seed, _POOL))

    if weights is WeightKind.UNIFORM:
        return SampledSphere(dim=dim, space=cloud_to_space(cloud, metric), cloud=cloud)

    w = voronoi_weights(cloud, reference_size, derive_seed(seed, _REFERENCE), reference=pool)
    keep = np.flatnonzero(w > 0)
    dropped = cloud.size - keep.size
    if dropped:
        logger.info("Dropping %s empty Voronoi cells on S^%s (N=%s)", dropped, dim, N)
        cloud = cloud.subset(keep)
        w = w[keep]
    return SampledSphere(dim=dim, space=cloud_to_space(cloud, metric, w), cloud=cloud, dropped=dropped)


__all__ = ["SampledSphere", "sample_sphere_space"]
