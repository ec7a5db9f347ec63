#!/usr/bin/env python
"""
Pydantic DTOs for the files the toolkit reads and writes: result rows,
solver and hierarchy summaries, and the finite-space JSON document.
"""

from __future__ import annotations

import math
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from config import Config

# Column order of every result CSV; bump Config.CSV_SCHEMA_VERSION when it changes.
CSV_COLUMNS: List[str] = [
    "schema_version",
    "experiment",
    "kind",
    "label",
    "m",
    "n",
    "N",
    "trial",
    "sampler",
    "weights",
    "solver",
    "metric",
    "p",
    "q",
    "estimate",
    "exact",
    "relative_error",
    "absolute_error",
    "band_low",
    "band_high",
    "std_error",
    "dlb_half",
    "slb_half",
    "tlb_half",
    "upper_half",
    "ordering_ok",
    "audit_tlb_half",
    "audit_ok",
    "iterations",
    "converged",
    "wall_time_seconds",
    "seed",
    "error",
    "note",
]


def format_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        if math.isnan(value):
            return "nan"
        return format(value, ".17g")
    return str(value)


class ResultRow(BaseModel):
    """One CSV line: a single trial, a summary over trials, a table row or a heatmap cell."""

    model_config = ConfigDict(extra="forbid")

    schema_version: int = Field(default_factory=lambda: Config.CSV_SCHEMA_VERSION)
    experiment: str
    kind: str = "trial"  # trial | summary | table | cell
    label: Optional[str] = None
    m: Optional[int] = None
    n: Optional[int] = None
    N: Optional[int] = None
    trial: Optional[int] = None
    sampler: Optional[str] = None
    weights: Optional[str] = None
    solver: Optional[str] = None
    metric: Optional[str] = None
    p: Optional[float] = None
    q: Optional[float] = None
    estimate: Optional[float] = None
    exact: Optional[float] = None
    relative_error: Optional[float] = None
    absolute_error: Optional[float] = None
    band_low: Optional[float] = None
    band_high: Optional[float] = None
    std_error: Optional[float] = None
    dlb_half: Optional[float] = None
    slb_half: Optional[float] = None
    tlb_half: Optional[float] = None
    upper_half: Optional[float] = None
    ordering_ok: Optional[bool] = None
    audit_tlb_half: Optional[float] = None
    audit_ok: Optional[bool] = None
    iterations: Optional[int] = None
    converged: Optional[bool] = None
    wall_time_seconds: Optional[float] = None
    seed: Optional[int] = None
    error: Optional[str] = None
    note: Optional[str] = None

    def sort_key(self) -> tuple:
        kinds = {"table": 0, "trial": 1, "summary": 2, "cell": 3}
        return (
            kinds.get(self.kind, 9),
            self.label or "",
            -1 if self.m is None else self.m,
            -1 if self.n is None else self.n,
            -1 if self.N is None else self.N,
            -1 if self.trial is None else self.trial,
        )

    def to_record(self) -> List[str]:
        data = self.model_dump()
        return [format_cell(data[column]) for column in CSV_COLUMNS]


class SolverSummaryDTO(BaseModel):
    solver: str
    value: float
    half_value: float
    iterations: int
    converged: bool
    init: str
    seed: Optional[int] = None
    trace: Optional[List[Optional[float]]] = None


class MMSpaceDTO(BaseModel):
    """JSON document of a finite metric-measure space."""

    model_config = ConfigDict(extra="ignore")

    n: int = Field(ge=1)
    dist: List[List[float]]
    weights: List[float]
    coords: Optional[List[List[float]]] = None
    metric: Optional[str] = None

    @field_validator("dist", "coords", mode="before")
    @classmethod
    def _parse_matrix(cls, value: Any) -> Any:
        if value is None:
            return None
        return [[float(x) for x in row] for row in value]

    @field_validator("weights", mode="before")
    @classmethod
    def _parse_vector(cls, value: Any) -> Any:
        return [float(x) for x in value]

    @field_validator("metric", mode="before")
    @classmethod
    def _normalize_metric(cls, value: Any) -> Any:
        return value.strip().lower() if isinstance(value, str) else value


class HierarchyDocument(BaseModel):
    spaces: List[str]
    report: Dict[str, Any]
    halves: Dict[str, Optional[float]]


__all__ = [
    "CSV_COLUMNS",
    "format_cell",
    "ResultRow",
    "SolverSummaryDTO",
    "MMSpaceDTO",
    "HierarchyDocument",
]
