#!/usr/bin/env python
"""Best-of-several conditional gradient runs from different starting couplings."""

from __future__ import annotations

import logging
from typing import List, Optional, Tuple

from src.core.errors import DomainError
from src.domain.mm.spaces import FiniteMMSpace
from src.domain.sampling.clouds import derive_seed
from src.domain.solvers.cgd import gw_cgd
from src.domain.solvers.linear import diagonal_available
from src.domain.solvers.params import GWSolveParams, InitKind, SolverReport
from src.infrastructure.pot import PotClient, build_default_client

logger = logging.getLogger(__name__)


def start_plan(X: FiniteMMSpace, Y: FiniteMMSpace, n_starts: int, seed: int) -> List[Tuple[InitKind, Optional[int]]]:
    """Product first, then diagonal when the marginals allow it, then seeded random starts."""
    if n_starts < 1:
        raise DomainError(f"n_starts must be >= 1, got {n_starts}")
    plan = [(InitKind.PRODUCT, None)]
    if len(plan) < n_starts and diagonal_available(X.weights, Y.weights):
        plan.append((InitKind.DIAGONAL, None))
    k = 0
    while len(plan) < n_starts:
        plan.append((InitKind.RANDOM, derive_seed(seed, k)))
        k += 1
    return plan


def multistart(
    X: FiniteMMSpace,
    Y: FiniteMMSpace,
    params: Optional[GWSolveParams] = None,
    n_starts: int = 1,
    seed: int = 0,
    *,
    client: Optional[PotClient] = None,
) -> SolverReport:
    params = params or GWSolveParams()
    client = client or build_default_client()
    best: Optional[SolverReport] = None
    for init, init_seed in start_plan(X, Y, n_starts, seed):
        report = gw_cgd(X, Y, params.with_init(init, init_seed), client=client)
        logger.debug("multistart init=%s seed=%s value=%.9g", init.value, init_seed, report.value)
        if best is None or report.value < best.value:
            best = report
    return best


__all__ = ["start_plan", "multistart"]
