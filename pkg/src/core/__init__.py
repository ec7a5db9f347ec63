"""Core primitives shared across backend layers."""

from .errors import (
    ClosedFormUnavailableError,
    DomainError,
    GWError,
    PreconditionError,
    SizeError,
    SolverError,
)
from .progress import CollectingPublisher, LoggingPublisher, NullPublisher, ProgressPublisher

__all__ = [
    "GWError",
    "DomainError",
    "PreconditionError",
    "ClosedFormUnavailableError",
    "SizeError",
    "SolverError",
    "ProgressPublisher",
    "NullPublisher",
    "LoggingPublisher",
    "CollectingPublisher",
]
