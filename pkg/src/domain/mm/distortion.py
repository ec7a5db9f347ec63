#!/usr/bin/env python
"""
Coupling validation, (p,q)-distortion and p-diameters of finite spaces.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from config import Config
from src.core.errors import DomainError, PreconditionError
from src.domain.mm.objective import EvalMethod, GWObjective
from src.domain.mm.spaces import Coupling, FiniteMMSpace, PqParams, lambda_q

logger = logging.getLogger(__name__)

MARGINAL_RTOL = 1e-8
MASS_TOL = 1e-12


@dataclass(frozen=True)
class CouplingValidation:
    ok: bool
    violations: List[str] = field(default_factory=list)
    min_entry: float = 0.0
    worst_row_deviation: float = 0.0
    worst_col_deviation: float = 0.0
    mass_deviation: float = 0.0

    @property
    def worst_marginal_deviation(self) -> float:
        return max(self.worst_row_deviation, self.worst_col_deviation)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "ok": self.ok,
            "violations": list(self.violations),
            "min_entry": self.min_entry,
            "worst_row_deviation": self.worst_row_deviation,
            "worst_col_deviation": self.worst_col_deviation,
            "worst_marginal_deviation": self.worst_marginal_deviation,
            "mass_deviation": self.mass_deviation,
        }


def _relative_deviation(actual: np.ndarray, expected: np.ndarray) -> float:
    if actual.size == 0:
        return 0.0
    scale = np.maximum(np.abs(expected), MASS_TOL)
    return float(np.max(np.abs(actual - expected) / scale))


def validate_coupling(gamma: Coupling) -> CouplingValidation:
    """Report-style check of nonnegativity, marginals and total mass."""
    g = gamma.gamma
    violations: List[str] = []
    min_entry = float(g.min()) if g.size else 0.0
    if not np.all(np.isfinite(g)):
        violations.append("non-finite")
    if min_entry < 0:
        violations.append("negativity")
    row_dev = _relative_deviation(g.sum(axis=1), gamma.mu)
    col_dev = _relative_deviation(g.sum(axis=0), gamma.nu)
    if row_dev > MARGINAL_RTOL:
        violations.append("row-marginal")
    if col_dev > MARGINAL_RTOL:
        violations.append("column-marginal")
    mass_dev = abs(float(g.sum()) - 1.0)
    if mass_dev > MASS_TOL:
        violations.append("mass")
    return CouplingValidation(
        ok=not violations,
        violations=violations,
        min_entry=min_entry,
        worst_row_deviation=row_dev,
        worst_col_deviation=col_dev,
        mass_deviation=mass_dev,
    )


def support_indices(gamma: np.ndarray, threshold: Optional[float] = None):
    thr = Config.SUPPORT_THRESHOLD if threshold is None else threshold
    total = float(gamma.sum())
    return np.nonzero(gamma > thr * total)


def _sup_distortion(
    dist_x: np.ndarray, dist_y: np.ndarray, gamma: np.ndarray, q: float, threshold: Optional[float]
) -> float:
    rows, cols = support_indices(gamma, threshold)
    if rows.size == 0:
        return 0.0
    best = 0.0
    chunk = max(1, 4_000_000 // rows.size)
    for start in range(0, rows.size, chunk):
        stop = min(rows.size, start + chunk)
        a = dist_x[np.ix_(rows[start:stop], rows)]
        b = dist_y[np.ix_(cols[start:stop], cols)]
        best = max(best, float(np.max(lambda_q(a, b, q))))
    return best


def distortion_pq(
    X: FiniteMMSpace,
    Y: FiniteMMSpace,
    gamma: Coupling,
    pq: PqParams,
    *,
    method: EvalMethod = "auto",
    support_threshold: Optional[float] = None,
) -> float:
    """(p,q)-distortion of ``gamma`` between X and Y.

    ``method="reference"`` forces the block-wise tensor contraction even
    when the p = 2q shortcut is available.
    """
    gamma.require_matches(X, Y)
    g = np.asarray(gamma.gamma)
    if pq.p_is_inf:
        return _sup_distortion(X.dist, Y.dist, g, pq.q, support_threshold)
    objective = GWObjective(X.dist, Y.dist, pq, method=method)
    return objective.distortion(g)


def p_diameter(X: FiniteMMSpace, p: float) -> float:
    """``(sum_ik d[i,k]^p w_i w_k)^(1/p)``, or the support diameter at p = inf."""
    if p < 1 or math.isnan(p):
        raise DomainError(f"p-diameter needs p >= 1, got {p}")
    w = X.weights
    if math.isinf(p):
        support = np.nonzero(w > 0)[0]
        return float(np.max(X.dist[np.ix_(support, support)]))
    return float(w @ (X.dist ** p) @ w) ** (1.0 / p)


def require_finite_p(pq: PqParams, what: str) -> None:
    if pq.p_is_inf:
        raise PreconditionError(f"{what} needs a finite p")


__all__ = [
    "CouplingValidation",
    "validate_coupling",
    "support_indices",
    "distortion_pq",
    "p_diameter",
    "require_finite_p",
]
