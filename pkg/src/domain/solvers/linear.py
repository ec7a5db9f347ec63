#!/usr/bin/env python
"""Exact linear OT and feasible starting couplings."""

from __future__ import annotations

import logging
from typing import Optional, Tuple

import numpy as np

from src.core.errors import DomainError, PreconditionError
from src.domain.mm.distortion import validate_coupling
from src.domain.mm.spaces import Coupling
from src.domain.sampling.clouds import make_rng
from src.domain.solvers.params import InitKind
from src.infrastructure.pot import PotClient, build_default_client

logger = logging.getLogger(__name__)


def _check_marginal(vec: np.ndarray, label: str) -> np.ndarray:
    vec = np.asarray(vec, dtype=np.float64).reshape(-1)
    if vec.size == 0 or np.any(vec < 0) or abs(float(vec.sum()) - 1.0) > 1e-9:
        raise DomainError(f"{label} must be a probability vector")
    return vec


def linear_ot(
    cost: np.ndarray, mu: np.ndarray, nu: np.ndarray, client: Optional[PotClient] = None
) -> Tuple[Coupling, float]:
    """Exact minimiser of <cost, gamma> over couplings of (mu, nu) by network simplex."""
    mu = _check_marginal(mu, "mu")
    nu = _check_marginal(nu, "nu")
    cost = np.asarray(cost, dtype=np.float64)
    if cost.shape != (mu.size, nu.size):
        raise DomainError(f"cost shape {cost.shape} does not match marginals ({mu.size}, {nu.size})")
    client = client or build_default_client()
    plan, value = client.emd(cost, mu, nu)
    return Coupling(gamma=plan, mu=mu, nu=nu), value


def round_to_marginals(plan: np.ndarray, mu: np.ndarray, nu: np.ndarray) -> np.ndarray:
    """Round an approximately feasible plan onto M(mu, nu): shrink rows, shrink columns, add the rank-one defect."""
    plan = np.maximum(np.asarray(plan, dtype=np.float64), 0.0)
    rows = plan.sum(axis=1)
    plan = plan * np.minimum(1.0, mu / np.where(rows > 0, rows, 1.0))[:, None]
    cols = plan.sum(axis=0)
    plan = plan * np.minimum(1.0, nu / np.where(cols > 0, cols, 1.0))[None, :]
    err_r = mu - plan.sum(axis=1)
    err_c = nu - plan.sum(axis=0)
    mass = float(err_r.sum())
    if mass > 0:
        plan = plan + np.outer(err_r, err_c) / mass
    return plan


def random_coupling(
    mu: np.ndarray, nu: np.ndarray, seed: int, client: Optional[PotClient] = None
) -> np.ndarray:
    """Random interior coupling: Sinkhorn scaling of a random positive kernel."""
    rng = make_rng(seed)
    kernel = rng.uniform(0.05, 1.0, size=(mu.size, nu.size))
    client = client or build_default_client()
    # exp(-cost / 1) reproduces the kernel
    result = client.sinkhorn_log(-np.log(kernel), mu, nu, 1.0, 10_000)
    return round_to_marginals(result.plan, mu, nu)


def initial_coupling(
    kind: InitKind,
    mu: np.ndarray,
    nu: np.ndarray,
    seed: Optional[int] = None,
    client: Optional[PotClient] = None,
) -> np.ndarray:
    kind = InitKind(kind)
    mu = np.asarray(mu, dtype=np.float64)
    nu = np.asarray(nu, dtype=np.float64)
    if kind is InitKind.PRODUCT:
        return np.outer(mu, nu)
    if kind is InitKind.DIAGONAL:
        if mu.size != nu.size or not np.allclose(mu, nu, rtol=1e-8, atol=1e-12):
            raise PreconditionError("diagonal initialization needs equal sizes and equal marginals")
        return np.diag(mu)
    return random_coupling(mu, nu, 0 if seed is None else seed, client)


def checked_start(init_coupling: np.ndarray, mu: np.ndarray, nu: np.ndarray) -> np.ndarray:
    """Caller-supplied start plan, verified to lie in M(mu, nu)."""
    try:
        start = Coupling(gamma=init_coupling, mu=mu, nu=nu)
    except DomainError as exc:
        raise PreconditionError(f"initial coupling: {exc}") from exc
    report = validate_coupling(start)
    if not report.ok:
        raise PreconditionError(
            f"initial coupling violates {', '.join(report.violations)} "
            f"(worst marginal deviation {report.worst_marginal_deviation:.3g})"
        )
    return np.array(start.gamma)


def diagonal_available(mu: np.ndarray, nu: np.ndarray) -> bool:
    return mu.size == nu.size and bool(np.allclose(mu, nu, rtol=1e-8, atol=1e-12))


__all__ = ["linear_ot", "round_to_marginals", "random_coupling", "initial_coupling", "checked_start", "diagonal_available"]
