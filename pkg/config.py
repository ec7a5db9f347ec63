#!/usr/bin/env python
# config.py
import os
from typing import List

# This assumes config.py is at the root of your project
basedir = os.path.abspath(os.path.dirname(__file__))


def _get_int(name: str, default: int) -> int:
    value = os.getenv(name)
    if value is None:
        return default
    try:
        return int(value)
    except ValueError:
        return default


def _get_float(name: str, default: float) -> float:
    value = os.getenv(name)
    if value is None:
        return default
    try:
        return float(value)
    except ValueError:
        return default


def _get_bool(name: str, default: bool = False) -> bool:
    value = os.getenv(name)
    if value is None:
        return default
    return value.strip().lower() in {"1", "true", "t", "yes", "y", "on"}


def _get_csv_list(name: str, default: str) -> List[str]:
    raw = os.getenv(name)
    source = raw if raw is not None else default
    return [token.strip() for token in source.split(",") if token and token.strip()]


class Config:
    # Global seed fallback for every command that takes --seed
    GW_SPHERES_SEED = _get_int('GW_SPHERES_SEED', 0)

    # Quadrature / Monte Carlo
    QUADRATURE_NODES = max(16, _get_int('GW_QUADRATURE_NODES', 256))
    MC_SAMPLES = max(2, _get_int('GW_MC_SAMPLES', 100_000))

    # Distortion evaluation
    # Atoms with gamma > threshold * total mass count as support for p = inf
    SUPPORT_THRESHOLD = _get_float('GW_SUPPORT_THRESHOLD', 1e-15)
    LAMBDA_INF_TOL = 1e-12
    # Generic (non p/q=2) tensor path refuses instances with n*m above this
    GENERIC_TENSOR_MAX_ENTRIES = _get_int('GW_GENERIC_TENSOR_MAX_ENTRIES', 10_000)

    # Solvers
    SOLVER_MAX_ITER = max(1, _get_int('GW_SOLVER_MAX_ITER', 1000))
    SOLVER_REL_TOL = _get_float('GW_SOLVER_REL_TOL', 1e-9)
    ENTROPIC_EPSILON = _get_float('GW_ENTROPIC_EPSILON', 0.01)
    INNER_SINKHORN_ITER = max(1, _get_int('GW_INNER_SINKHORN_ITER', 1000))
    SINKHORN_MARGINAL_TOL = 1e-9
    EMD_MAX_ITER = _get_int('GW_EMD_MAX_ITER', 1_000_000)

    # Sampling
    DEGENERATE_NORM_TOL = 1e-12
    UNIT_NORM_TOL = 1e-10
    VORONOI_REFERENCE_SIZE = max(1, _get_int('GW_VORONOI_REFERENCE_SIZE', 100_000))
    PAPER_VORONOI_REFERENCE_SIZE = 1_000_000
    VORONOI_CHUNK_SIZE = max(1, _get_int('GW_VORONOI_CHUNK_SIZE', 50_000))

    # Experiments
    DESK_TRIALS = max(1, _get_int('GW_DESK_TRIALS', 5))
    PAPER_CONVERGENCE_TRIALS = 20
    PAPER_HEATMAP_TRIALS = 10
    HEATMAP_POINTS = max(2, _get_int('GW_HEATMAP_POINTS', 100))
    JOBS = max(1, _get_int('GW_JOBS', 1))
    CONVERGENCE_DIMS = _get_csv_list('GW_CONVERGENCE_DIMS', '1-2,1-3,2-3')
    CSV_SCHEMA_VERSION = 1

    # Output
    OUTPUT_DIR = os.getenv('GW_OUTPUT_DIR', 'results')
    LOG_DIR = os.getenv('GW_LOG_DIR', os.path.join(basedir, 'log'))

    # Runtime behavior
    DEBUG = _get_bool('DEBUG', False)
    # Control console logging; when disabled, logs go only to file
    ENABLE_CONSOLE_LOGS = _get_bool('ENABLE_CONSOLE_LOGS', False)
