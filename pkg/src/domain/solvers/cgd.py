#!/usr/bin/env python
"""
Conditional gradient (Frank-Wolfe) for the (p,q)-GW objective.

Each step linearizes F(G) = dis_{p,q}(G)^p, solves the linear OT for the
descent vertex and moves along the segment with an exact line search:
F is quadratic in G, so along G + t*D it is ``F(G) + a t^2 + b t``.
"""

from __future__ import annotations

import logging
from typing import Optional

import numpy as np

from src.core.errors import PreconditionError
from src.domain.mm.objective import GWObjective, exact_line_step
from src.domain.mm.spaces import Coupling, FiniteMMSpace
from src.domain.solvers.linear import checked_start, initial_coupling, linear_ot
from src.domain.solvers.params import GWSolveParams, InitKind, SolverReport
from src.infrastructure.pot import PotClient, build_default_client

logger = logging.getLogger(__name__)


def gw_cgd(
    X: FiniteMMSpace,
    Y: FiniteMMSpace,
    params: Optional[GWSolveParams] = None,
    *,
    init_coupling: Optional[np.ndarray] = None,
    client: Optional[PotClient] = None,
) -> SolverReport:
    params = params or GWSolveParams()
    pq = params.pq
    if pq.p_is_inf:
        raise PreconditionError("conditional gradient needs a finite p")
    client = client or build_default_client()
    objective = GWObjective(X.dist, Y.dist, pq)
    mu, nu = X.weights, Y.weights

    if init_coupling is None:
        G = initial_coupling(params.init, mu, nu, params.init_seed, client)
    else:
        G = checked_start(init_coupling, mu, nu)
    F = objective.value(G)
    trace = [F]
    converged = F == 0.0
    iteration = 0

    while not converged and iteration < params.max_iter:
        iteration += 1
        grad = objective.gradient(G)
        vertex, _ = linear_ot(grad, mu, nu, client)
        direction = vertex.gamma - G
        a, b = objective.line_coefficients(G, direction, grad)
        if b >= 0.0:
            # no descent direction left: G is stationary
            converged = True
            trace.append(F)
            break
        t = exact_line_step(a, b)
        G = G + t * direction
        F_next = objective.value(G)
        trace.append(F_next)
        if F_next == 0.0 or abs(F - F_next) <= params.rel_tol * F:
            converged = True
        F = F_next

    if not converged:
        logger.warning(
            "CGD stopped at max_iter=%s without meeting rel_tol=%s (n=%s, m=%s)",
            params.max_iter, params.rel_tol, X.n_points, Y.n_points,
        )
    else:
        logger.debug("CGD converged after %s iterations, objective %.6g", iteration, F)

    coupling = Coupling(gamma=G, mu=mu, nu=nu)
    return SolverReport(
        value=objective.distortion(coupling.gamma),
        coupling=coupling,
        iterations=iteration,
        converged=converged,
        objective_trace=trace,
        solver="cgd",
        init=InitKind(params.init),
        seed=params.init_seed,
    )


__all__ = ["gw_cgd"]
