#!/usr/bin/env python
"""
Cross-correlation ``M = sum_ij gamma_ij x_i y_j^T`` of embedded clouds and the
inner-product form of the (4,2)-distortion on unit spheres.

For unit vectors ``|x - x'|^2 = 2 - 2<x,x'>``, which gives
``dis_{4,2}(gamma)^4 = 4 T_X + 4 T_Y - 8 J(gamma)`` with
``T_X = sum_ik w_i w_k <x_i,x_k>^2`` and ``J = |M|_F^2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict

import numpy as np

from config import Config
from src.core.errors import PreconditionError
from src.domain.mm.spaces import Coupling, FiniteMMSpace

# fourth roots amplify round-off; brackets below this fraction of the scale are zero
_ZERO_RTOL = 1e-14


@dataclass(frozen=True)
class CrossCorrelation:
    M: np.ndarray
    J: float
    D: float

    def to_dict(self) -> Dict[str, Any]:
        return {"M": self.M.tolist(), "J": self.J, "D": self.D}


def _coords(space: FiniteMMSpace, label: str) -> np.ndarray:
    if space.coords is None:
        raise PreconditionError(f"{label} carries no coordinates")
    return space.coords


def paired_cross_correlation(x: np.ndarray, y: np.ndarray, weights: np.ndarray = None) -> CrossCorrelation:
    """Cross-correlation of a coupling given as matched pairs ``(x_k, y_k)``."""
    x = np.atleast_2d(np.asarray(x, dtype=np.float64))
    y = np.atleast_2d(np.asarray(y, dtype=np.float64))
    if x.shape[0] != y.shape[0]:
        raise PreconditionError("paired samples must have the same length")
    w = np.full(x.shape[0], 1.0 / x.shape[0]) if weights is None else np.asarray(weights, dtype=np.float64)
    M = (x * w[:, None]).T @ y
    return _from_matrix(M)


def _from_matrix(M: np.ndarray) -> CrossCorrelation:
    k = min(M.shape)
    diag = np.diagonal(M)[:k]
    return CrossCorrelation(M=M, J=float(np.sum(M * M)), D=float(np.sum(diag ** 2)))


def cross_correlation(X: FiniteMMSpace, Y: FiniteMMSpace, gamma: Coupling) -> CrossCorrelation:
    x = _coords(X, "X")
    y = _coords(Y, "Y")
    gamma.require_matches(X, Y)
    return _from_matrix(x.T @ gamma.gamma @ y)


def _require_unit_rows(coords: np.ndarray, label: str) -> None:
    norms = np.linalg.norm(coords, axis=1)
    worst = float(np.max(np.abs(norms - 1.0))) if norms.size else 0.0
    if worst > Config.UNIT_NORM_TOL:
        raise PreconditionError(f"{label} has rows off the unit sphere (max deviation {worst:.3g})")


def gram_fourth_moment(coords: np.ndarray, weights: np.ndarray) -> float:
    """``sum_ik w_i w_k <x_i,x_k>^2``, computed as ``|X^T diag(w) X|_F^2``."""
    second = (coords * weights[:, None]).T @ coords
    return float(np.sum(second * second))


def dis42_via_inner_products(X: FiniteMMSpace, Y: FiniteMMSpace, gamma: Coupling) -> float:
    x = _coords(X, "X")
    y = _coords(Y, "Y")
    _require_unit_rows(x, "X")
    _require_unit_rows(y, "Y")
    gamma.require_matches(X, Y)
    term_x = gram_fourth_moment(x, X.weights)
    term_y = gram_fourth_moment(y, Y.weights)
    J = cross_correlation(X, Y, gamma).J
    scale = 4.0 * term_x + 4.0 * term_y
    bracket = scale - 8.0 * J
    if bracket <= _ZERO_RTOL * scale:
        return 0.0
    return bracket ** 0.25


__all__ = [
    "CrossCorrelation",
    "cross_correlation",
    "paired_cross_correlation",
    "gram_fourth_moment",
    "dis42_via_inner_products",
]
