#!/usr/bin/env python
"""
POT (Python Optimal Transport) adapter.

Keeps the domain solvers insulated from the third-party API: exact linear
OT goes through ``ot.emd`` (network simplex) and entropic OT through the
log-domain Sinkhorn of ``ot.bregman``.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
import ot

from config import Config
from src.core.errors import DomainError, SolverError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SinkhornResult:
    plan: np.ndarray
    iterations: int
    marginal_error: float
    # log-domain scalings, fed back as ``warmstart`` on the next call
    log_u: Optional[np.ndarray] = None
    log_v: Optional[np.ndarray] = None

    @property
    def potentials(self) -> Optional[Tuple[np.ndarray, np.ndarray]]:
        if self.log_u is None or self.log_v is None:
            return None
        return self.log_u, self.log_v


class PotClient:
    """Thin wrapper around the two POT entry points the solvers need."""

    def __init__(
        self,
        emd_max_iter: int = Config.EMD_MAX_ITER,
        sinkhorn_tol: float = Config.SINKHORN_MARGINAL_TOL,
        app_logger: Optional[logging.Logger] = None,
    ) -> None:
        self.emd_max_iter = int(emd_max_iter)
        self.sinkhorn_tol = float(sinkhorn_tol)
        self.logger = app_logger or logger

    @staticmethod
    def _balanced(mu: np.ndarray, nu: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        a = np.ascontiguousarray(mu, dtype=np.float64)
        b = np.ascontiguousarray(nu, dtype=np.float64)
        # EMD refuses marginals whose totals differ in the last bits
        b = b * (a.sum() / b.sum())
        return a, b

    def emd(self, cost: np.ndarray, mu: np.ndarray, nu: np.ndarray) -> Tuple[np.ndarray, float]:
        """Exact optimal plan and value of min <cost, gamma> over M(mu, nu)."""
        cost = np.ascontiguousarray(cost, dtype=np.float64)
        if not np.all(np.isfinite(cost)):
            raise DomainError("cost matrix contains NaN or infinite entries")
        a, b = self._balanced(mu, nu)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            plan, log = ot.emd(a, b, cost, numItermax=self.emd_max_iter, log=True)
        if log.get("warning"):
            self.logger.warning("EMD returned with warning: %s", log["warning"])
        plan = np.asarray(plan, dtype=np.float64)
        return plan, float(np.sum(plan * cost))

    def sinkhorn_log(
        self,
        cost: np.ndarray,
        mu: np.ndarray,
        nu: np.ndarray,
        epsilon: float,
        max_iter: int,
        *,
        outer_iteration: Optional[int] = None,
        warmstart: Optional[Tuple[np.ndarray, np.ndarray]] = None,
    ) -> SinkhornResult:
        """Entropic OT plan computed in the log domain, optionally warm-started from earlier scalings."""
        if epsilon <= 0:
            raise DomainError(f"entropic regularization must be positive, got {epsilon}")
        cost = np.ascontiguousarray(cost, dtype=np.float64)
        if not np.all(np.isfinite(cost)):
            raise SolverError("non-finite linearized cost", iteration=outer_iteration)
        a, b = self._balanced(mu, nu)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            plan, log = ot.bregman.sinkhorn_log(
                a, b, cost, epsilon,
                numItermax=int(max_iter),
                stopThr=self.sinkhorn_tol,
                log=True,
                warn=False,
                warmstart=warmstart,
            )
        plan = np.asarray(plan, dtype=np.float64)
        if not np.all(np.isfinite(plan)):
            raise SolverError("Sinkhorn produced non-finite entries", iteration=outer_iteration)
        err = float(
            np.abs(plan.sum(axis=1) - a).sum() + np.abs(plan.sum(axis=0) - b).sum()
        )
        return SinkhornResult(
            plan=plan,
            iterations=int(log.get("niter", max_iter)),
            marginal_error=err,
            log_u=log.get("log_u"),
            log_v=log.get("log_v"),
        )


def build_default_client(app_logger: Optional[logging.Logger] = None) -> PotClient:
    """Build a PotClient from Config defaults."""
    return PotClient(app_logger=app_logger)


__all__ = ["PotClient", "SinkhornResult", "build_default_client"]
