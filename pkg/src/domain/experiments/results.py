#!/usr/bin/env python
"""Flat-file outputs of an experiment: rows CSV, summary JSON and the heatmap grid."""

from __future__ import annotations

import csv
import json
import logging
import os
import re
from typing import Dict, Iterable, List, Optional

import numpy as np

from config import Config
from src.models.dto import CSV_COLUMNS, ResultRow, format_cell

from .runner import ExperimentResult

logger = logging.getLogger(__name__)


class ResultWriter:
    def __init__(self, base_output_dir: Optional[str] = None) -> None:
        self.base_output_dir = base_output_dir or Config.OUTPUT_DIR
        os.makedirs(self.base_output_dir, exist_ok=True)
        logger.debug("ResultWriter writing under %s", self.base_output_dir)

    @staticmethod
    def sanitize_filename(name: str) -> str:
        name = re.sub(r'[\\/:*?"<>|\s]', "_", name.strip())
        return re.sub(r"_{2,}", "_", name)

    def _path(self, name: str) -> str:
        return os.path.join(self.base_output_dir, self.sanitize_filename(name))

    def write_rows(self, name: str, rows: Iterable[ResultRow]) -> str:
        """Header plus one line per row, in sort-key order."""
        path = self._path(f"{name}.csv")
        ordered: List[ResultRow] = sorted(rows, key=ResultRow.sort_key)
        with open(path, "w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(CSV_COLUMNS)
            for row in ordered:
                writer.writerow(row.to_record())
        logger.info("Wrote %s rows to %s", len(ordered), path)
        return path

    def write_summary(self, name: str, payload: Dict) -> str:
        path = self._path(f"{name}_summary.json")
        with open(path, "w", encoding="utf-8") as handle:
            json.dump(_jsonable(payload), handle, indent=2, sort_keys=True)
            handle.write("\n")
        return path

    def write_grid(self, name: str, dims: List[int], grid: np.ndarray) -> str:
        """Square CSV: first column is m, header holds n."""
        path = self._path(f"{name}_grid.csv")
        with open(path, "w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(["m\\n"] + [str(d) for d in dims])
            for d, values in zip(dims, grid):
                writer.writerow([str(d)] + [format_cell(float(v)) for v in values])
        return path

    def write(self, result: ExperimentResult) -> Dict[str, str]:
        name = result.experiment.value
        paths = {
            "rows": self.write_rows(name, result.rows),
            "summary": self.write_summary(name, result.summary),
        }
        if result.grid is not None and result.grid_dims is not None:
            paths["grid"] = self.write_grid(name, result.grid_dims, result.grid)
        return paths


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (np.floating, float)):
        value = float(value)
        return value if np.isfinite(value) else format_cell(value)
    if isinstance(value, np.integer):
        return int(value)
    return value


__all__ = ["ResultWriter"]
