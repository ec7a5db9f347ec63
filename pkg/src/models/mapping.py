#!/usr/bin/env python
"""
Conversions between domain objects and their file forms.

Spaces travel as JSON (``MMSpaceDTO``), point clouds and couplings as CSV
matrices with one row per point.
"""

from __future__ import annotations

import csv
import json
import os
from typing import Iterable, List, Optional

import numpy as np
from pydantic import ValidationError

from src.core.errors import DomainError
from src.domain.mm.spaces import Coupling, FiniteMMSpace, MetricKind
from src.domain.sampling.clouds import PointCloud, cloud_to_space
from src.domain.solvers.params import SolverReport

from .dto import MMSpaceDTO, SolverSummaryDTO, format_cell


def space_to_dto(space: FiniteMMSpace) -> MMSpaceDTO:
    return MMSpaceDTO.model_validate(space.to_dict())


def dto_to_space(dto: MMSpaceDTO) -> FiniteMMSpace:
    return FiniteMMSpace.from_dict(dto.model_dump(exclude_none=True))


def report_to_summary(report: SolverReport, include_trace: bool = False) -> SolverSummaryDTO:
    return SolverSummaryDTO(
        solver=report.solver,
        value=report.value,
        half_value=report.half_value,
        iterations=report.iterations,
        converged=report.converged,
        init=report.init.value,
        seed=report.seed,
        trace=report.to_dict(include_trace=True)["trace"] if include_trace else None,
    )


def _read_matrix_csv(path: str) -> np.ndarray:
    if not os.path.isfile(path):
        raise DomainError(f"file not found: {path}")
    rows: List[List[float]] = []
    with open(path, "r", encoding="utf-8", newline="") as handle:
        for record in csv.reader(handle):
            if not record or record[0].lstrip().startswith("#"):
                continue
            try:
                rows.append([float(cell) for cell in record])
            except ValueError:
                # header line
                if rows:
                    raise DomainError(f"{path}: non-numeric row {record!r}")
    if not rows:
        raise DomainError(f"{path}: no numeric rows")
    if len({len(r) for r in rows}) != 1:
        raise DomainError(f"{path}: rows have different lengths")
    return np.asarray(rows, dtype=np.float64)


def _write_matrix_csv(path: str, matrix: np.ndarray, header: Optional[Iterable[str]] = None) -> str:
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        if header is not None:
            writer.writerow(list(header))
        for row in np.atleast_2d(matrix):
            writer.writerow([format_cell(float(x)) for x in row])
    return path


def load_space_json(path: str) -> FiniteMMSpace:
    if not os.path.isfile(path):
        raise DomainError(f"space file not found: {path}")
    with open(path, "r", encoding="utf-8") as handle:
        try:
            payload = json.load(handle)
        except json.JSONDecodeError as exc:
            raise DomainError(f"{path} is not valid JSON: {exc}") from exc
    try:
        return dto_to_space(MMSpaceDTO.model_validate(payload))
    except ValidationError as exc:
        raise DomainError(f"{path} is not a metric-measure space document: {exc.error_count()} errors") from exc


def save_space_json(space: FiniteMMSpace, path: str) -> str:
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(space_to_dto(space).model_dump(exclude_none=True), handle, indent=2)
    return path


def load_point_cloud_csv(path: str, normalize: bool = False) -> PointCloud:
    """Rows are points; ``normalize`` projects them onto the unit sphere first."""
    coords = _read_matrix_csv(path)
    if normalize:
        norms = np.linalg.norm(coords, axis=1, keepdims=True)
        if np.any(norms == 0):
            raise DomainError(f"{path}: cannot normalize the zero vector")
        coords = coords / norms
    return PointCloud(coords=coords)


def load_space(path: str, metric: MetricKind = MetricKind.EUCLIDEAN) -> FiniteMMSpace:
    """A ``.json`` space document, or a CSV point cloud on the sphere with uniform weights."""
    if path.lower().endswith(".json"):
        return load_space_json(path)
    return cloud_to_space(load_point_cloud_csv(path), MetricKind(metric))


def save_point_cloud_csv(cloud: PointCloud, path: str) -> str:
    header = [f"x{k}" for k in range(cloud.ambient_dim)]
    return _write_matrix_csv(path, cloud.coords, header)


def load_coupling_csv(path: str, X: FiniteMMSpace, Y: FiniteMMSpace) -> Coupling:
    gamma = _read_matrix_csv(path)
    if gamma.shape != (X.n_points, Y.n_points):
        raise DomainError(f"{path}: coupling shape {gamma.shape} does not match ({X.n_points}, {Y.n_points})")
    return Coupling(gamma=gamma, mu=X.weights, nu=Y.weights)


def save_coupling_csv(coupling: Coupling, path: str) -> str:
    return _write_matrix_csv(path, coupling.gamma)


__all__ = [
    "space_to_dto",
    "dto_to_space",
    "report_to_summary",
    "load_space_json",
    "save_space_json",
    "load_point_cloud_csv",
    "load_space",
    "save_point_cloud_csv",
    "load_coupling_csv",
    "save_coupling_csv",
]
