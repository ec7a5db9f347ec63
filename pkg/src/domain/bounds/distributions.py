#!/usr/bin/env python
"""
Discrete distributions on R+ and the distance distributions of finite spaces.

Quantiles follow the right-continuous convention ``inf{t : F(t) > u}``; at a
jump level this picks the next atom.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, Tuple

import numpy as np

from src.core.errors import DomainError
from src.domain.mm.spaces import FiniteMMSpace


@dataclass(frozen=True)
class Discrete1DDistribution:
    atoms: np.ndarray
    weights: np.ndarray

    def __post_init__(self) -> None:
        atoms = np.asarray(self.atoms, dtype=np.float64).reshape(-1)
        weights = np.asarray(self.weights, dtype=np.float64).reshape(-1)
        if atoms.size == 0 or atoms.shape != weights.shape:
            raise DomainError("atoms and weights must be non-empty and of equal length")
        if np.any(atoms < 0) or not np.all(np.isfinite(atoms)):
            raise DomainError("atoms must be finite nonnegative reals")
        if np.any(np.diff(atoms) <= 0):
            raise DomainError("atoms must be strictly increasing; build with from_samples to merge")
        if np.any(weights < 0):
            raise DomainError("weights must be nonnegative")
        if abs(float(weights.sum()) - 1.0) > 1e-12:
            raise DomainError(f"weights must sum to 1 (got {weights.sum():.17g})")
        atoms.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def from_samples(cls, values, weights=None) -> "Discrete1DDistribution":
        """Merge repeated values, summing their weights, and renormalize."""
        values = np.asarray(values, dtype=np.float64).reshape(-1)
        if weights is None:
            weights = np.full(values.size, 1.0 / max(values.size, 1))
        weights = np.asarray(weights, dtype=np.float64).reshape(-1)
        atoms, inverse = np.unique(values, return_inverse=True)
        merged = np.zeros(atoms.size, dtype=np.float64)
        np.add.at(merged, inverse.reshape(-1), weights)
        keep = merged > 0
        if not np.any(keep):
            raise DomainError("distribution has no mass")
        atoms, merged = atoms[keep], merged[keep]
        return cls(atoms=atoms, weights=merged / merged.sum())

    @classmethod
    def dirac(cls, at: float = 0.0) -> "Discrete1DDistribution":
        return cls(atoms=np.array([float(at)]), weights=np.array([1.0]))

    @property
    def cumulative(self) -> np.ndarray:
        cum = np.cumsum(self.weights)
        cum[-1] = 1.0
        return cum

    @property
    def breakpoints(self) -> Tuple[float, ...]:
        return tuple(np.concatenate(([0.0], self.cumulative)).tolist())

    def cdf(self, t):
        t = np.asarray(t, dtype=np.float64)
        idx = np.searchsorted(self.atoms, t, side="right")
        out = np.concatenate(([0.0], self.cumulative))[idx]
        return float(out) if out.ndim == 0 else out

    def quantile(self, u):
        """Right-continuous generalized inverse; level 1 maps to the largest atom."""
        u = np.asarray(u, dtype=np.float64)
        if np.any(u < 0) or np.any(u > 1) or np.any(np.isnan(u)):
            raise DomainError("quantile level must lie in [0, 1]")
        idx = np.searchsorted(self.cumulative, u, side="right")
        out = self.atoms[np.minimum(idx, self.atoms.size - 1)]
        return float(out) if out.ndim == 0 else out

    def moment(self, r: float) -> float:
        return float(np.sum(self.weights * self.atoms ** r))

    def to_dict(self) -> Dict[str, Any]:
        return {"atoms": self.atoms.tolist(), "weights": self.weights.tolist()}


def global_distance_distribution(X: FiniteMMSpace) -> Discrete1DDistribution:
    """Law of d(x, x') under w (x) w, self-pairs at distance 0 included."""
    return Discrete1DDistribution.from_samples(X.dist.ravel(), np.outer(X.weights, X.weights).ravel())


def local_distance_distribution(X: FiniteMMSpace, i: int) -> Discrete1DDistribution:
    """Law of d(x_i, x') under w."""
    return Discrete1DDistribution.from_samples(X.dist[i], X.weights)


__all__ = ["Discrete1DDistribution", "global_distance_distribution", "local_distance_distribution"]
