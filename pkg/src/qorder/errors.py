"""Exception hierarchy shared by every module."""

from __future__ import annotations


class QOrderError(Exception):
    """Base class for library errors."""


class ParameterError(QOrderError, ValueError):
    """A parameter is outside the range an operation accepts."""


class Graph6Error(QOrderError, ValueError):
    """Malformed graph6 text."""


class DisconnectedGraphError(QOrderError, ValueError):
    """An operation that needs a connected graph received a disconnected one."""


class ConvergenceError(QOrderError, RuntimeError):
    """The eigen-solver hit its iteration cap."""


class HypothesisError(QOrderError, ValueError):
    """Parameters violate the hypotheses of the statement being verified."""


class CapExceededError(QOrderError, ValueError):
    """Requested enumeration size exceeds the configured cap."""
