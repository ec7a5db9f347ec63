#!/usr/bin/env python
"""
Brute-force minimum of the (p,q)-distortion for tiny instances.

A coupling of (mu, nu) is fixed by its leading (n-1) x (m-1) block theta;
the last row, last column and corner follow from the marginals. The
objective is quadratic in theta, so its coefficients are computed once and
the grid is scanned in vectorized chunks.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.core.errors import PreconditionError, SizeError
from src.domain.mm.objective import GWObjective
from src.domain.mm.spaces import Coupling, FiniteMMSpace, PqParams

logger = logging.getLogger(__name__)

MAX_FREE_PARAMETERS = 4
MAX_GRID_POINTS = 200_000_000
_CHUNK = 1_000_000
_FEASIBILITY_TOL = -1e-15


@dataclass(frozen=True)
class OracleResult:
    value: float
    coupling: Coupling
    grid_points: int
    feasible_points: int


def _base_and_basis(mu: np.ndarray, nu: np.ndarray):
    n, m = mu.size, nu.size
    base = np.zeros((n, m))
    base[: n - 1, m - 1] = mu[: n - 1]
    base[n - 1, : m - 1] = nu[: m - 1]
    base[n - 1, m - 1] = mu[n - 1] - nu[: m - 1].sum()
    basis = []
    for i in range(n - 1):
        for j in range(m - 1):
            E = np.zeros((n, m))
            E[i, j] = 1.0
            E[i, m - 1] = -1.0
            E[n - 1, j] = -1.0
            E[n - 1, m - 1] = 1.0
            basis.append(E)
    return base, basis


def bruteforce_search(
    X: FiniteMMSpace, Y: FiniteMMSpace, pq: PqParams, resolution: int, max_grid_points: Optional[int] = None
) -> OracleResult:
    if pq.p_is_inf:
        raise PreconditionError("the grid oracle needs a finite p")
    if resolution < 1:
        raise PreconditionError(f"resolution must be >= 1, got {resolution}")
    n, m = X.n_points, Y.n_points
    free = (n - 1) * (m - 1)
    if free > MAX_FREE_PARAMETERS:
        raise SizeError(f"oracle handles at most {MAX_FREE_PARAMETERS} free entries, got {free} ({n}x{m})")
    mu, nu = X.weights, Y.weights
    objective = GWObjective(X.dist, Y.dist, pq)
    base, basis = _base_and_basis(mu, nu)

    if free == 0:
        coupling = Coupling(gamma=base, mu=mu, nu=nu)
        return OracleResult(objective.distortion(base), coupling, 1, 1)

    cap = MAX_GRID_POINTS if max_grid_points is None else int(max_grid_points)
    total = (resolution + 1) ** free
    if total > cap:
        raise SizeError(f"grid of {total} points exceeds the cap of {cap}; lower the resolution")

    # F(theta) = d + c.theta + theta.Q.theta
    contracted = [objective.contract(E) for E in basis]
    d = float(np.sum(base * objective.contract(base)))
    c = np.array([2.0 * float(np.sum(E * objective.contract(base))) for E in basis])
    Q = np.array([[float(np.sum(Ek * LEl)) for LEl in contracted] for Ek in basis])

    rows = [i for i in range(n - 1) for _ in range(m - 1)]
    cols = [j for _ in range(n - 1) for j in range(m - 1)]
    axes = [np.linspace(0.0, min(mu[i], nu[j]), resolution + 1) for i, j in zip(rows, cols)]
    shape = tuple(resolution + 1 for _ in range(free))

    best_value = np.inf
    best_theta = None
    feasible = 0
    for start in range(0, total, _CHUNK):
        flat = np.arange(start, min(total, start + _CHUNK))
        index = np.unravel_index(flat, shape)
        theta = np.stack([axes[k][index[k]] for k in range(free)], axis=1)
        block = theta.reshape(-1, n - 1, m - 1)
        ok = np.all(mu[: n - 1][None, :] - block.sum(axis=2) >= _FEASIBILITY_TOL, axis=1)
        ok &= np.all(nu[: m - 1][None, :] - block.sum(axis=1) >= _FEASIBILITY_TOL, axis=1)
        ok &= base[n - 1, m - 1] + theta.sum(axis=1) >= _FEASIBILITY_TOL
        if not np.any(ok):
            continue
        theta = theta[ok]
        feasible += theta.shape[0]
        values = d + theta @ c + np.einsum("ck,kl,cl->c", theta, Q, theta)
        k = int(np.argmin(values))
        if values[k] < best_value:
            best_value = float(values[k])
            best_theta = theta[k]

    if best_theta is None:
        raise PreconditionError("no feasible grid point; check the marginals")
    gamma = base + sum(t * E for t, E in zip(best_theta, basis))
    logger.debug("Oracle %sx%s scanned %s points (%s feasible)", n, m, total, feasible)
    return OracleResult(
        value=max(best_value, 0.0) ** (1.0 / pq.p),
        coupling=Coupling(gamma=np.maximum(gamma, 0.0), mu=mu, nu=nu),
        grid_points=total,
        feasible_points=feasible,
    )


def gw_bruteforce_small(X: FiniteMMSpace, Y: FiniteMMSpace, pq: PqParams, resolution: int) -> float:
    """Minimal (p,q)-distortion over a grid of the coupling polytope."""
    return bruteforce_search(X, Y, pq, resolution).value


__all__ = ["MAX_FREE_PARAMETERS", "OracleResult", "bruteforce_search", "gw_bruteforce_small"]
