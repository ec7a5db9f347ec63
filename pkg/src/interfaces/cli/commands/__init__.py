"""Click commands, one module per CLI slice."""

from .analytic import bounds_cmd, exact_cmd
from .experiments import convergence_cmd, heatmap_cmd, tables_cmd
from .solve import distortion_cmd, solve_cmd

__all__ = [
    "exact_cmd",
    "bounds_cmd",
    "distortion_cmd",
    "solve_cmd",
    "tables_cmd",
    "convergence_cmd",
    "heatmap_cmd",
]
