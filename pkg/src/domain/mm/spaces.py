#!/usr/bin/env python
"""
Metric-measure spaces, couplings and the Lambda_q family on R+.

Values are immutable after construction (arrays are marked read-only) so
they can be shared freely between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from config import Config
from src.core.errors import DomainError, PreconditionError

ArrayLike = Union[np.ndarray, List[float], List[List[float]]]

INF = math.inf


class MetricKind(str, Enum):
    GEODESIC = "geodesic"
    EUCLIDEAN = "euclidean"


def parse_exponent(value: Any) -> float:
    if isinstance(value, str):
        token = value.strip().lower()
        if token in {"inf", "infinity", "oo", "∞"}:
            return INF
        return float(token)
    return float(value)


class PqParams(BaseModel):
    """Exponents of the (p,q)-distortion; infinity is ``math.inf``."""

    model_config = ConfigDict(frozen=True, ser_json_inf_nan="strings")

    p: float = Field(default=4.0, ge=1.0)
    q: float = Field(default=2.0, ge=1.0)

    @field_validator("p", "q", mode="before")
    @classmethod
    def _parse_infinity(cls, value: Any) -> float:
        return parse_exponent(value)

    @property
    def p_is_inf(self) -> bool:
        return math.isinf(self.p)

    @property
    def q_is_inf(self) -> bool:
        return math.isinf(self.q)

    @property
    def limit_mode(self) -> bool:
        return self.p_is_inf or self.q_is_inf

    @property
    def is_quadratic(self) -> bool:
        """True when p/q = 2, i.e. the loss is a squared difference of q-th powers."""
        return not self.limit_mode and abs(self.p - 2.0 * self.q) <= 1e-12

    def with_q(self, q: float) -> "PqParams":
        return PqParams(p=self.p, q=q)


def _check_lambda_inputs(a: np.ndarray, b: np.ndarray, q: float) -> None:
    if q < 1 or math.isnan(q):
        raise DomainError(f"Lambda_q requires q >= 1, got {q}")
    if np.any(a < 0) or np.any(b < 0):
        raise DomainError("Lambda_q is defined on nonnegative reals only")


def lambda_q(a, b, q: float):
    """Lambda_q(a, b) = |a^q - b^q|^(1/q); at q = inf, max(a, b) when a != b else 0.

    Accepts scalars or broadcastable arrays; scalars in, float out.
    """
    a_arr = np.asarray(a, dtype=np.float64)
    b_arr = np.asarray(b, dtype=np.float64)
    _check_lambda_inputs(a_arr, b_arr, q)
    if math.isinf(q):
        out = np.where(np.abs(a_arr - b_arr) > Config.LAMBDA_INF_TOL, np.maximum(a_arr, b_arr), 0.0)
    elif q == 1.0:
        out = np.abs(a_arr - b_arr)
    else:
        out = np.abs(a_arr ** q - b_arr ** q) ** (1.0 / q)
    if out.ndim == 0:
        return float(out)
    return out


def lambda_q_pow(a: np.ndarray, b: np.ndarray, q: float, p: float) -> np.ndarray:
    """Lambda_q(a, b)^p without the intermediate root (p finite). No input checks."""
    if math.isinf(q):
        return np.where(np.abs(a - b) > Config.LAMBDA_INF_TOL, np.maximum(a, b) ** p, 0.0)
    return np.abs(a ** q - b ** q) ** (p / q)


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=np.float64, copy=True)
    arr.setflags(write=False)
    return arr


def pairwise_distances(coords: np.ndarray, metric: MetricKind) -> np.ndarray:
    """Euclidean distances, or geodesic ones via arccos of the clamped inner product."""
    coords = np.asarray(coords, dtype=np.float64)
    if MetricKind(metric) is MetricKind.GEODESIC:
        gram = np.clip(coords @ coords.T, -1.0, 1.0)
        dist = np.arccos(gram)
    else:
        sq = np.sum(coords ** 2, axis=1)
        dist = np.sqrt(np.maximum(sq[:, None] + sq[None, :] - 2.0 * coords @ coords.T, 0.0))
    np.fill_diagonal(dist, 0.0)
    return 0.5 * (dist + dist.T)


@dataclass(frozen=True)
class FiniteMMSpace:
    """A finite metric-measure space: distance matrix plus probability weights."""

    dist: np.ndarray
    weights: np.ndarray
    coords: Optional[np.ndarray] = None
    metric: Optional[MetricKind] = None
    check_metric: bool = field(default=False, repr=False)

    def __post_init__(self) -> None:
        dist = np.asarray(self.dist, dtype=np.float64)
        weights = np.asarray(self.weights, dtype=np.float64).reshape(-1)
        if dist.ndim != 2 or dist.shape[0] != dist.shape[1]:
            raise DomainError(f"distance matrix must be square, got shape {dist.shape}")
        n = dist.shape[0]
        if n < 1:
            raise DomainError("a metric-measure space needs at least one point")
        if weights.shape[0] != n:
            raise DomainError(f"expected {n} weights, got {weights.shape[0]}")
        if not np.all(np.isfinite(dist)) or np.any(dist < 0):
            raise DomainError("distances must be finite and nonnegative")
        if not np.allclose(dist, dist.T, rtol=0.0, atol=1e-12):
            raise DomainError("distance matrix must be symmetric")
        if np.any(np.abs(np.diag(dist)) > 0):
            raise DomainError("distance matrix must have a zero diagonal")
        if np.any(weights < 0):
            raise DomainError("weights must be nonnegative")
        if abs(weights.sum() - 1.0) > 1e-12:
            raise DomainError(f"weights must sum to 1 (got {weights.sum():.17g})")
        object.__setattr__(self, "dist", _frozen(dist))
        object.__setattr__(self, "weights", _frozen(weights))
        if self.coords is not None:
            coords = np.asarray(self.coords, dtype=np.float64)
            if coords.ndim != 2 or coords.shape[0] != n:
                raise DomainError(f"coords must have {n} rows")
            if self.metric is not None:
                expected = pairwise_distances(coords, self.metric)
                if np.max(np.abs(expected - dist)) > 1e-10:
                    raise DomainError("distances disagree with the declared metric of coords")
            object.__setattr__(self, "coords", _frozen(coords))
        if self.metric is not None:
            object.__setattr__(self, "metric", MetricKind(self.metric))
        if self.check_metric and not self.check_triangle_inequality():
            raise DomainError("distance matrix violates the triangle inequality")

    @property
    def n_points(self) -> int:
        return int(self.dist.shape[0])

    @property
    def has_coords(self) -> bool:
        return self.coords is not None

    @classmethod
    def from_points(
        cls,
        coords: ArrayLike,
        metric: MetricKind = MetricKind.EUCLIDEAN,
        weights: Optional[ArrayLike] = None,
    ) -> "FiniteMMSpace":
        coords = np.atleast_2d(np.asarray(coords, dtype=np.float64))
        n = coords.shape[0]
        w = np.full(n, 1.0 / n) if weights is None else np.asarray(weights, dtype=np.float64)
        return cls(dist=pairwise_distances(coords, metric), weights=w, coords=coords, metric=MetricKind(metric))

    @classmethod
    def one_point(cls) -> "FiniteMMSpace":
        return cls(dist=np.zeros((1, 1)), weights=np.ones(1))

    def check_triangle_inequality(self, tol: float = 1e-10) -> bool:
        d = self.dist
        for k in range(self.n_points):
            if np.any(d > d[:, k][:, None] + d[k, :][None, :] + tol):
                return False
        return True

    def scaled(self, factor: float) -> "FiniteMMSpace":
        if factor <= 0:
            raise DomainError("scale factor must be positive")
        coords = None if self.coords is None else self.coords * factor
        metric = self.metric if self.metric is MetricKind.EUCLIDEAN else None
        return FiniteMMSpace(dist=self.dist * factor, weights=self.weights, coords=coords, metric=metric)

    def to_dict(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {
            "n": self.n_points,
            "dist": self.dist.tolist(),
            "weights": self.weights.tolist(),
        }
        if self.coords is not None:
            payload["coords"] = self.coords.tolist()
        if self.metric is not None:
            payload["metric"] = self.metric.value
        return payload

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "FiniteMMSpace":
        dist = np.asarray(payload["dist"], dtype=np.float64)
        if "n" in payload and int(payload["n"]) != dist.shape[0]:
            raise DomainError(f"declared n={payload['n']} but dist has {dist.shape[0]} rows")
        coords = payload.get("coords")
        metric = payload.get("metric")
        return cls(
            dist=dist,
            weights=np.asarray(payload["weights"], dtype=np.float64),
            coords=None if coords is None else np.asarray(coords, dtype=np.float64),
            metric=None if metric is None else MetricKind(metric),
        )


@dataclass(frozen=True)
class Coupling:
    """Joint probability matrix with its prescribed marginals."""

    gamma: np.ndarray
    mu: np.ndarray
    nu: np.ndarray

    def __post_init__(self) -> None:
        gamma = np.atleast_2d(np.asarray(self.gamma, dtype=np.float64))
        mu = np.asarray(self.mu, dtype=np.float64).reshape(-1)
        nu = np.asarray(self.nu, dtype=np.float64).reshape(-1)
        if gamma.shape != (mu.shape[0], nu.shape[0]):
            raise DomainError(
                f"coupling shape {gamma.shape} does not match marginals ({mu.shape[0]}, {nu.shape[0]})"
            )
        object.__setattr__(self, "gamma", _frozen(gamma))
        object.__setattr__(self, "mu", _frozen(mu))
        object.__setattr__(self, "nu", _frozen(nu))

    @property
    def rows(self) -> int:
        return int(self.gamma.shape[0])

    @property
    def cols(self) -> int:
        return int(self.gamma.shape[1])

    @classmethod
    def from_matrix(cls, gamma: ArrayLike) -> "Coupling":
        """Coupling whose marginals are read off the matrix itself."""
        g = np.atleast_2d(np.asarray(gamma, dtype=np.float64))
        return cls(gamma=g, mu=g.sum(axis=1), nu=g.sum(axis=0))

    @classmethod
    def product(cls, mu: ArrayLike, nu: ArrayLike) -> "Coupling":
        mu = np.asarray(mu, dtype=np.float64)
        nu = np.asarray(nu, dtype=np.float64)
        return cls(gamma=np.outer(mu, nu), mu=mu, nu=nu)

    @classmethod
    def diagonal(cls, weights: ArrayLike) -> "Coupling":
        w = np.asarray(weights, dtype=np.float64)
        return cls(gamma=np.diag(w), mu=w, nu=w)

    def transpose(self) -> "Coupling":
        return Coupling(gamma=self.gamma.T, mu=self.nu, nu=self.mu)

    def matches(self, X: FiniteMMSpace, Y: FiniteMMSpace, rtol: float = 1e-8) -> bool:
        if self.gamma.shape != (X.n_points, Y.n_points):
            return False
        rows = self.gamma.sum(axis=1)
        cols = self.gamma.sum(axis=0)
        return bool(
            np.allclose(rows, X.weights, rtol=rtol, atol=1e-12)
            and np.allclose(cols, Y.weights, rtol=rtol, atol=1e-12)
        )

    def require_matches(self, X: FiniteMMSpace, Y: FiniteMMSpace) -> None:
        if self.gamma.shape != (X.n_points, Y.n_points):
            raise PreconditionError(
                f"coupling shape {self.gamma.shape} does not match spaces ({X.n_points}, {Y.n_points})"
            )
        if not self.matches(X, Y):
            raise PreconditionError("coupling marginals do not match the space weights")


__all__ = [
    "INF",
    "MetricKind",
    "PqParams",
    "parse_exponent",
    "lambda_q",
    "lambda_q_pow",
    "pairwise_distances",
    "FiniteMMSpace",
    "Coupling",
]
