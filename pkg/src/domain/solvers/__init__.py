"""Discrete GW solvers: exact linear OT, conditional gradient, entropic GW and a grid oracle."""

from src.domain.solvers.cgd import gw_cgd
from src.domain.solvers.entropic import gw_entropic
from src.domain.solvers.linear import (
    checked_start,
    diagonal_available,
    initial_coupling,
    linear_ot,
    random_coupling,
    round_to_marginals,
)
from src.domain.solvers.multistart import multistart, start_plan
from src.domain.solvers.oracle import MAX_FREE_PARAMETERS, OracleResult, bruteforce_search, gw_bruteforce_small
from src.domain.solvers.params import GWSolveParams, InitKind, SolverReport

__all__ = [
    "MAX_FREE_PARAMETERS",
    "GWSolveParams",
    "InitKind",
    "OracleResult",
    "SolverReport",
    "bruteforce_search",
    "checked_start",
    "diagonal_available",
    "gw_bruteforce_small",
    "gw_cgd",
    "gw_entropic",
    "initial_coupling",
    "linear_ot",
    "multistart",
    "random_coupling",
    "round_to_marginals",
    "start_plan",
]
