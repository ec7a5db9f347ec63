#!/usr/bin/env python
"""Quadrature nodes and Gamma-function ratios shared by the sphere formulas."""

from __future__ import annotations

from functools import lru_cache
from typing import Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import gammaln

from src.core.errors import DomainError


@lru_cache(maxsize=16)
def gauss_legendre(node_count: int, lower: float = 0.0, upper: float = 1.0) -> Tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights mapped onto ``[lower, upper]``."""
    if node_count < 1:
        raise DomainError(f"need at least one quadrature node, got {node_count}")
    x, w = leggauss(int(node_count))
    half = 0.5 * (upper - lower)
    nodes = lower + half * (x + 1.0)
    weights = half * w
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def composite_gauss_legendre(node_count: int, breakpoints) -> Tuple[np.ndarray, np.ndarray]:
    """Nodes/weights of Gauss-Legendre applied on each interval between sorted breakpoints."""
    edges = np.unique(np.asarray(breakpoints, dtype=np.float64))
    nodes, weights = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        if hi > lo:
            x, w = gauss_legendre(node_count, float(lo), float(hi))
            nodes.append(x)
            weights.append(w)
    return np.concatenate(nodes), np.concatenate(weights)


def gamma_ratio(a: float, b: float) -> float:
    """``Gamma(a) / Gamma(b)`` through log-gamma (stable for large arguments)."""
    return float(np.exp(gammaln(a) - gammaln(b)))


def projection_gamma_ratio(m: int, n: int) -> float:
    """``Gamma((m+2)/2) Gamma((n+1)/2) / (Gamma((m+1)/2) Gamma((n+2)/2))``."""
    return float(
        np.exp(gammaln((m + 2) / 2.0) + gammaln((n + 1) / 2.0) - gammaln((m + 1) / 2.0) - gammaln((n + 2) / 2.0))
    )


__all__ = ["gauss_legendre", "composite_gauss_legendre", "gamma_ratio", "projection_gamma_ratio"]
