#!/usr/bin/env python
"""Voronoi cell masses of landmarks, estimated by counting a reference sample."""

from __future__ import annotations

import logging
from typing import Optional, Union

import numpy as np

from config import Config
from src.core.errors import DomainError
from src.domain.sampling.clouds import PointCloud, Seed, make_rng, sample_sphere_uniform

logger = logging.getLogger(__name__)


def nearest_landmark(landmarks: PointCloud, points: np.ndarray, chunk_size: Optional[int] = None) -> np.ndarray:
    """Index of the nearest landmark for each point, lowest index on ties.

    On the sphere both metrics are decreasing in the inner product, so the
    nearest landmark is the one with the largest inner product.
    """
    chunk = Config.VORONOI_CHUNK_SIZE if chunk_size is None else max(1, int(chunk_size))
    L = landmarks.coords
    out = np.empty(points.shape[0], dtype=np.int64)
    sq_l = np.sum(L * L, axis=1)
    for start in range(0, points.shape[0], chunk):
        block = points[start : start + chunk]
        if landmarks.on_sphere:
            out[start : start + chunk] = np.argmax(block @ L.T, axis=1)
        else:
            sq = sq_l[None, :] - 2.0 * block @ L.T
            out[start : start + chunk] = np.argmin(sq, axis=1)
    return out


def voronoi_weights(
    landmarks: PointCloud,
    reference_size: Optional[int] = None,
    seed: Union[Seed, np.random.Generator] = 0,
    *,
    reference: Optional[PointCloud] = None,
    chunk_size: Optional[int] = None,
) -> np.ndarray:
    """Fraction of a uniform reference sample falling in each landmark's cell.

    ``reference`` replaces the fresh uniform sample when given.
    """
    if reference is None:
        size = Config.VORONOI_REFERENCE_SIZE if reference_size is None else int(reference_size)
        if size < 1:
            raise DomainError(f"reference_size must be >= 1, got {size}")
        reference = sample_sphere_uniform(landmarks.sphere_dim, size, make_rng(seed))
    elif reference.ambient_dim != landmarks.ambient_dim:
        raise DomainError("reference and landmarks live in different dimensions")
    owners = nearest_landmark(landmarks, reference.coords, chunk_size)
    counts = np.bincount(owners, minlength=landmarks.size).astype(np.float64)
    empty = int(np.sum(counts == 0))
    if empty:
        logger.info("Voronoi estimate left %s of %s cells empty", empty, landmarks.size)
    return counts / counts.sum()


__all__ = ["nearest_landmark", "voronoi_weights"]
