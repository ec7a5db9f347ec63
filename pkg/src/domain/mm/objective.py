#!/usr/bin/env python
"""
Tensor contraction L (x) G for the (p,q)-distortion objective.

``F(G) = sum_ijkl L[i,j,k,l] G[i,j] G[k,l]`` with
``L[i,j,k,l] = Lambda_q(dX[i,k], dY[j,l])^p`` is a quadratic form in the
coupling for every finite (p,q). When p/q = 2 the loss is
``(dX^q - dY^q)^2`` and the contraction reduces to three matrix products;
otherwise the tensor is built one row block at a time.
"""

from __future__ import annotations

import logging
from typing import Literal, Optional

import numpy as np

from config import Config
from src.core.errors import DomainError, SizeError
from src.domain.mm.spaces import FiniteMMSpace, PqParams, lambda_q_pow

logger = logging.getLogger(__name__)

EvalMethod = Literal["auto", "fast", "reference"]

# floats materialised per row block of the generic path
_BLOCK_BUDGET = 2_000_000
# objective values below this fraction of the loss scale are round-off
_ZERO_RTOL = 1e-14


class GWObjective:
    """Evaluates ``F(G) = dis_{p,q}(G)^p`` and its derivatives for fixed X, Y."""

    def __init__(
        self,
        dist_x: np.ndarray,
        dist_y: np.ndarray,
        pq: PqParams,
        method: EvalMethod = "auto",
        max_entries: Optional[int] = None,
    ) -> None:
        if pq.p_is_inf:
            raise DomainError("the quadratic objective needs a finite p")
        self.dist_x = np.asarray(dist_x, dtype=np.float64)
        self.dist_y = np.asarray(dist_y, dtype=np.float64)
        self.pq = pq
        self.n = self.dist_x.shape[0]
        self.m = self.dist_y.shape[0]
        # bound on any loss entry: Lambda_q(a, b) <= max(a, b)
        scale = float(np.max(self.dist_x, initial=0.0)) ** pq.p + float(np.max(self.dist_y, initial=0.0)) ** pq.p
        self.zero_tol = _ZERO_RTOL * scale

        if method == "fast" and not pq.is_quadratic:
            raise DomainError(f"fast evaluation needs p = 2q, got p={pq.p}, q={pq.q}")
        self.fast = pq.is_quadratic and method in ("auto", "fast")

        if self.fast:
            self._a = self.dist_x ** pq.q
            self._b = self.dist_y ** pq.q
            self._a2 = self._a ** 2
            self._b2 = self._b ** 2
        else:
            cap = Config.GENERIC_TENSOR_MAX_ENTRIES if max_entries is None else max_entries
            if self.n * self.m > cap:
                raise SizeError(
                    f"generic (p,q)=({pq.p},{pq.q}) evaluation needs n*m <= {cap}, got {self.n}*{self.m}"
                )
            self._block = max(1, _BLOCK_BUDGET // max(1, self.n * self.m))
        logger.debug(
            "GWObjective n=%s m=%s p=%s q=%s path=%s", self.n, self.m, pq.p, pq.q, "fast" if self.fast else "generic"
        )

    @classmethod
    def for_spaces(
        cls, X: FiniteMMSpace, Y: FiniteMMSpace, pq: PqParams, method: EvalMethod = "auto"
    ) -> "GWObjective":
        return cls(X.dist, Y.dist, pq, method=method)

    def contract(self, G: np.ndarray) -> np.ndarray:
        """Return the n x m matrix ``(L (x) G)[i,j] = sum_kl L[i,j,k,l] G[k,l]``."""
        G = np.asarray(G, dtype=np.float64)
        if self.fast:
            rows = G.sum(axis=1)
            cols = G.sum(axis=0)
            return (self._a2 @ rows)[:, None] + (self._b2 @ cols)[None, :] - 2.0 * (self._a @ G @ self._b)
        return self._contract_generic(G)

    def _contract_generic(self, G: np.ndarray) -> np.ndarray:
        p, q = self.pq.p, self.pq.q
        out = np.empty((self.n, self.m), dtype=np.float64)
        dy = self.dist_y
        # fixed block order keeps the reduction deterministic
        for i in range(self.n):
            dx_row = self.dist_x[i][None, :, None]
            for start in range(0, self.m, self._block):
                stop = min(self.m, start + self._block)
                lam = lambda_q_pow(dx_row, dy[start:stop, None, :], q, p)
                out[i, start:stop] = np.einsum("jkl,kl->j", lam, G)
        return out

    def value(self, G: np.ndarray) -> float:
        """``dis_{p,q}(G)^p``; values within round-off of zero are returned as 0."""
        F = float(np.sum(G * self.contract(G)))
        return 0.0 if F <= self.zero_tol else F

    def gradient(self, G: np.ndarray) -> np.ndarray:
        return 2.0 * self.contract(G)

    def distortion(self, G: np.ndarray) -> float:
        return self.value(G) ** (1.0 / self.pq.p)

    def line_coefficients(self, G: np.ndarray, direction: np.ndarray, grad: Optional[np.ndarray] = None):
        """Coefficients (a, b) of ``F(G + t*D) - F(G) = a t^2 + b t``."""
        if grad is None:
            grad = self.gradient(G)
        a = float(np.sum(direction * self.contract(direction)))
        b = float(np.sum(direction * grad))
        return a, b


def exact_line_step(a: float, b: float) -> float:
    """Minimiser over [0, 1] of ``a t^2 + b t``."""
    if a > 0:
        return float(np.clip(-b / (2.0 * a), 0.0, 1.0))
    return 1.0 if a + b < 0 else 0.0


__all__ = ["EvalMethod", "GWObjective", "exact_line_step"]
