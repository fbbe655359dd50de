"""
Exception hierarchy shared by every feature module
Each error carries the CLI exit code it maps to
"""
from typing import Any, Optional


class ChordError(Exception):
    """Base class for all toolkit errors."""
    exit_code = 1

    def __init__(self, message: str, **context: Any):
        super().__init__(message)
        self.message = message
        self.context = context

    def to_dict(self) -> dict:
        return {"error": type(self).__name__, "message": self.message, **self.context}


class GraphInputError(ChordError):
    """Malformed or empty graph input, or infeasible generator parameters."""
    exit_code = 2

    def __init__(self, message: str, line: Optional[int] = None, **context: Any):
        if line is not None:
            message = f"line {line}: {message}"
            context["line"] = line
        super().__init__(message, **context)


class PreconditionError(ChordError):
    """An operation was called outside its stated preconditions."""
    exit_code = 2


class GraphTooLarge(PreconditionError):
    """Exact enumeration requested on a graph above its size cap."""


class SearchFailure(ChordError):
    """A search ran out of candidates or budget."""

    def __init__(self, message: str, certificate: Any = None, **context: Any):
        super().__init__(message, **context)
        self.certificate = certificate


class StageFailure(SearchFailure):
    """
    A pipeline stage failed; the stage name is part of the message.

    `partial` holds the best intermediate result built before the failure, if any.
    """

    def __init__(self, stage: str, cause: Exception, partial: Any = None):
        super().__init__(f"stage '{stage}' failed: {cause}", stage=stage)
        self.stage = stage
        self.cause = cause
        self.partial = partial


class VerificationError(ChordError):
    """A postcondition re-check failed. Always an internal error."""
    exit_code = 3


def verify(condition: bool, message: str, **context: Any) -> None:
    """Raise VerificationError when a postcondition does not hold."""
    if not condition:
        raise VerificationError(message, **context)
