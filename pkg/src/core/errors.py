#!/usr/bin/env python
"""Exception hierarchy shared by every domain package."""

from __future__ import annotations

from typing import Optional


class GWError(Exception):
    """Base class for all errors raised by the toolkit."""

    error_code = "gw_error"


class DomainError(GWError, ValueError):
    """Input lies outside the mathematical domain of an operation."""

    error_code = "domain_error"


class PreconditionError(GWError, ValueError):
    """Inputs are individually valid but violate an operation's precondition."""

    error_code = "precondition_failed"


class ClosedFormUnavailableError(GWError):
    """The quantile closed form for (R+, Lambda_q) needs q <= p."""

    error_code = "closed_form_unavailable"


class SizeError(GWError, ValueError):
    """Instance is too large for the requested evaluation path."""

    error_code = "size_exceeded"


class SolverError(GWError, RuntimeError):
    """Numerical failure inside an iterative solver."""

    error_code = "solver_failed"

    def __init__(self, message: str, *, iteration: Optional[int] = None) -> None:
        super().__init__(message if iteration is None else f"{message} (iteration {iteration})")
        self.iteration = iteration


__all__ = [
    "GWError",
    "DomainError",
    "PreconditionError",
    "ClosedFormUnavailableError",
    "SizeError",
    "SolverError",
]
