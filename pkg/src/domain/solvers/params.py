#!/usr/bin/env python
"""Solver parameters and the report every solver returns."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from config import Config
from src.domain.mm.spaces import Coupling, PqParams


class InitKind(str, Enum):
    PRODUCT = "product"
    DIAGONAL = "diagonal"
    RANDOM = "random"


class GWSolveParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    pq: PqParams = Field(default_factory=PqParams)
    max_iter: int = Field(default_factory=lambda: Config.SOLVER_MAX_ITER, ge=1)
    rel_tol: float = Field(default_factory=lambda: Config.SOLVER_REL_TOL, ge=0.0)
    epsilon: float = Field(default_factory=lambda: Config.ENTROPIC_EPSILON, gt=0.0)
    init: InitKind = InitKind.PRODUCT
    init_seed: Optional[int] = Field(default=None, ge=0)
    inner_sinkhorn_iter: int = Field(default_factory=lambda: Config.INNER_SINKHORN_ITER, ge=1)

    @field_validator("init", mode="before")
    @classmethod
    def _normalize_init(cls, value: Any) -> Any:
        if isinstance(value, str):
            return value.strip().lower()
        return value

    def with_init(self, init: InitKind, seed: Optional[int] = None) -> "GWSolveParams":
        return self.model_copy(update={"init": InitKind(init), "init_seed": seed})


@dataclass
class SolverReport:
    """Outcome of one solver run; ``value`` is the full distortion, not halved."""

    value: float
    coupling: Coupling
    iterations: int
    converged: bool
    objective_trace: List[float] = field(default_factory=list)
    solver: str = "cgd"
    init: InitKind = InitKind.PRODUCT
    seed: Optional[int] = None

    @property
    def half_value(self) -> float:
        return self.value / 2.0

    def to_dict(self, include_trace: bool = False) -> Dict[str, Any]:
        payload: Dict[str, Any] = {
            "solver": self.solver,
            "value": self.value,
            "iterations": self.iterations,
            "converged": self.converged,
            "init": self.init.value,
        }
        if self.seed is not None:
            payload["seed"] = self.seed
        if include_trace:
            payload["trace"] = [v if math.isfinite(v) else None for v in self.objective_trace]
        return payload


__all__ = ["InitKind", "GWSolveParams", "SolverReport"]
