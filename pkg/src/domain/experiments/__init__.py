"""Experiment harness: sampled instances, trial queue, runners and result files."""

from src.domain.experiments.instances import SampledSphere, sample_sphere_space
from src.domain.experiments.results import ResultWriter
from src.domain.experiments.runner import (
    AUDIT_TOL,
    TABLE_PAIRS,
    ExperimentResult,
    ExperimentRunner,
    reference_value,
    run_convergence,
    run_heatmap,
    run_tables,
    solve_instance,
    solve_params,
)
from src.domain.experiments.trials import Trial, TrialQueue

__all__ = [
    "AUDIT_TOL",
    "TABLE_PAIRS",
    "ExperimentResult",
    "ExperimentRunner",
    "ResultWriter",
    "SampledSphere",
    "Trial",
    "TrialQueue",
    "reference_value",
    "run_convergence",
    "run_heatmap",
    "run_tables",
    "sample_sphere_space",
    "solve_instance",
    "solve_params",
]
