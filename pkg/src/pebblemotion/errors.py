"""Exception types shared across the package."""

from __future__ import annotations


class PebbleMotionError(Exception):
    """Base class for all errors raised by this package."""


class InstanceError(PebbleMotionError):
    """Invalid graph or instance data (self-loop, disconnected graph, bad ids, ...)."""


class ParseError(PebbleMotionError):
    """Malformed instance, solution, or CNF file."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SolverError(PebbleMotionError):
    """A solver was called outside its preconditions (wrong goal, not a tree, ...)."""


class GuardError(PebbleMotionError):
    """A size guard protecting an exponential routine was exceeded."""


class NoVertexCutError(PebbleMotionError):
    """The two terminals are adjacent, so no vertex set can separate them."""
