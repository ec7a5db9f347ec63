#!/usr/bin/env python
"""
Experiment configuration schema and loader.

Merges defaults from config.Config with an optional JSON config file and
runtime (CLI) overrides, in that order of precedence.
"""

from __future__ import annotations

import json
import math
import os
import re
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from config import Config
from src.core.errors import DomainError
from src.domain.mm.spaces import MetricKind, PqParams, parse_exponent


class ExperimentKind(str, Enum):
    TABLES = "tables"
    CONVERGENCE = "convergence"
    HEATMAP = "heatmap"
    EXACT = "exact"
    BOUNDS = "bounds"


class SamplerKind(str, Enum):
    RANDOM = "random"
    FPS = "fps"


class WeightKind(str, Enum):
    UNIFORM = "uniform"
    VORONOI = "voronoi"


class SolverKind(str, Enum):
    CGD = "cgd"
    ENTROPIC = "entropic"


def _truthy(value: object) -> bool:
    if isinstance(value, str):
        return value.strip().lower() in {"1", "true", "t", "yes", "y", "on"}
    return bool(value)


def parse_dim_pair(value: object) -> Tuple[int, int]:
    """Accept ``"1-2"``, ``"1:2"``, ``[1, 2]`` or ``(1, 2)``."""
    if isinstance(value, str):
        token = value.replace(":", "-")
        parts = [p for p in token.split("-") if p.strip()]
    elif isinstance(value, (list, tuple)):
        parts = list(value)
    else:
        raise ValueError(f"cannot read a dimension pair from {value!r}")
    if len(parts) != 2:
        raise ValueError(f"a dimension pair needs two entries, got {value!r}")
    m, n = int(parts[0]), int(parts[1])
    if m < 0 or n < 0:
        raise ValueError("sphere dimensions must be >= 0")
    return m, n


class ExperimentConfig(BaseModel):
    """Every CLI flag has a config-file key of the same name."""

    model_config = ConfigDict(extra="ignore")

    experiment: ExperimentKind = ExperimentKind.CONVERGENCE
    dims: List[Tuple[int, int]] = Field(default_factory=lambda: [parse_dim_pair(d) for d in Config.CONVERGENCE_DIMS])
    m: Optional[int] = Field(default=None, ge=0)
    n: Optional[int] = Field(default=None, ge=0)
    dim_min: int = Field(default=1, ge=0)
    dim_max: int = Field(default=7, ge=0)
    sample_sizes: List[int] = Field(default_factory=lambda: list(range(10, 201, 10)))
    points: Optional[int] = None
    trials: Optional[int] = None
    sampler: SamplerKind = SamplerKind.FPS
    weights: WeightKind = WeightKind.VORONOI
    solver: SolverKind = SolverKind.CGD
    metric: MetricKind = MetricKind.EUCLIDEAN
    seed: int = Field(default_factory=lambda: Config.GW_SPHERES_SEED, ge=0)
    p: float = 4.0
    q: float = 2.0
    epsilon: float = Field(default_factory=lambda: Config.ENTROPIC_EPSILON)
    max_iter: int = Field(default_factory=lambda: Config.SOLVER_MAX_ITER)
    rel_tol: float = Field(default_factory=lambda: Config.SOLVER_REL_TOL)
    reference_size: Optional[int] = None
    jobs: int = Field(default_factory=lambda: Config.JOBS)
    paper_scale: bool = False
    audit: bool = False
    record_timings: bool = False
    out: str = Field(default_factory=lambda: Config.OUTPUT_DIR)

    @field_validator("dims", mode="before")
    @classmethod
    def _parse_dims(cls, value: object) -> List[Tuple[int, int]]:
        if isinstance(value, str):
            value = [token for token in re.split(r"[,;\s]+", value) if token]
        return [parse_dim_pair(item) for item in value]  # type: ignore[union-attr]

    @field_validator("sample_sizes", mode="before")
    @classmethod
    def _parse_sizes(cls, value: object) -> List[int]:
        if isinstance(value, str):
            value = [token for token in value.split(",") if token.strip()]
        sizes = [int(v) for v in value]  # type: ignore[union-attr]
        if not sizes or any(s < 2 for s in sizes):
            raise ValueError("sample sizes must all be >= 2")
        return sizes

    @field_validator("points")
    @classmethod
    def _check_points(cls, value: Optional[int]) -> Optional[int]:
        if value is not None and value < 2:
            raise ValueError("points must be >= 2")
        return value

    @field_validator("trials")
    @classmethod
    def _check_trials(cls, value: Optional[int]) -> Optional[int]:
        if value is not None and value < 1:
            raise ValueError("trials must be >= 1")
        return value

    @field_validator("jobs", mode="before")
    @classmethod
    def _coerce_jobs(cls, value: object) -> int:
        try:
            jobs = int(value)  # type: ignore[arg-type]
        except (TypeError, ValueError):
            return 1
        return max(1, min(jobs, 64))

    @field_validator("max_iter", mode="before")
    @classmethod
    def _coerce_max_iter(cls, value: object) -> int:
        return max(1, int(value))  # type: ignore[arg-type]

    @field_validator("p", "q", mode="before")
    @classmethod
    def _parse_exponent(cls, value: object) -> float:
        exponent = parse_exponent(value)
        if not exponent >= 1.0:
            raise ValueError("exponents must be >= 1")
        return exponent

    @field_validator("paper_scale", "audit", "record_timings", mode="before")
    @classmethod
    def _coerce_flag(cls, value: object) -> bool:
        return _truthy(value)

    @field_validator("sampler", "weights", "solver", "metric", "experiment", mode="before")
    @classmethod
    def _lower(cls, value: object) -> object:
        return value.strip().lower() if isinstance(value, str) else value

    @property
    def pq(self) -> PqParams:
        return PqParams(p=self.p, q=self.q)

    @property
    def dim_pairs(self) -> List[Tuple[int, int]]:
        if self.m is not None and self.n is not None:
            return [(self.m, self.n)]
        return list(self.dims)

    @property
    def dim_range(self) -> List[int]:
        lo, hi = min(self.dim_min, self.dim_max), max(self.dim_min, self.dim_max)
        return list(range(lo, hi + 1))

    @property
    def sizes(self) -> List[int]:
        return [self.points] if self.points is not None else list(self.sample_sizes)

    @property
    def heatmap_points(self) -> int:
        return self.points if self.points is not None else Config.HEATMAP_POINTS

    def resolved_trials(self) -> int:
        if self.trials is not None:
            return self.trials
        if not self.paper_scale:
            return Config.DESK_TRIALS
        if self.experiment is ExperimentKind.HEATMAP:
            return Config.PAPER_HEATMAP_TRIALS
        return Config.PAPER_CONVERGENCE_TRIALS

    def resolved_reference_size(self) -> int:
        if self.reference_size is not None:
            return max(1, self.reference_size)
        return Config.PAPER_VORONOI_REFERENCE_SIZE if self.paper_scale else Config.VORONOI_REFERENCE_SIZE

    def summary(self) -> Dict[str, Any]:
        data = self.model_dump(mode="json")
        data["trials"] = self.resolved_trials()
        data["reference_size"] = self.resolved_reference_size()
        for key in ("p", "q"):
            if math.isinf(getattr(self, key)):
                data[key] = "inf"
        return data


def read_config_file(path: str) -> Dict[str, Any]:
    if not os.path.isfile(path):
        raise DomainError(f"config file not found: {path}")
    with open(path, "r", encoding="utf-8") as handle:
        try:
            payload = json.load(handle)
        except json.JSONDecodeError as exc:
            raise DomainError(f"config file {path} is not valid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise DomainError(f"config file {path} must hold a JSON object")
    # CLI spelling with dashes is accepted too
    return {str(k).replace("-", "_"): v for k, v in payload.items()}


def format_validation_error(exc: ValidationError) -> str:
    parts = []
    for err in exc.errors():
        loc = ".".join(str(x) for x in err.get("loc", ()))
        parts.append(f"{loc}: {err.get('msg')}" if loc else str(err.get("msg")))
    return "; ".join(parts)


def load_experiment_config(
    path: Optional[str] = None,
    overrides: Optional[Dict[str, Any]] = None,
) -> ExperimentConfig:
    """Defaults < JSON config file < overrides; ``None`` overrides are ignored."""
    data: Dict[str, Any] = {}
    if path:
        data.update(read_config_file(path))
    if overrides:
        data.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as exc:
        raise DomainError(f"invalid experiment config: {format_validation_error(exc)}") from exc


__all__ = [
    "ExperimentKind",
    "SamplerKind",
    "WeightKind",
    "SolverKind",
    "ExperimentConfig",
    "parse_dim_pair",
    "read_config_file",
    "format_validation_error",
    "load_experiment_config",
]
