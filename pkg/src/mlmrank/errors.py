"""Exception types shared across the package."""

from __future__ import annotations


class DataError(ValueError):
    """Input data violates the expected file format or record schema."""


class ParseError(DataError):
    """A source line could not be parsed. Carries the offending location."""

    def __init__(self, message: str, *, path=None, line: int | None = None):
        parts = []
        if path is not None:
            parts.append(str(path))
        if line is not None:
            parts.append(f"line {line}")
        prefix = ", ".join(parts)
        super().__init__(f"{prefix}: {message}" if prefix else message)
        self.path = path
        self.line = line


class SchemaError(DataError):
    """A record parsed cleanly but its content violates an invariant."""


class SplitError(DataError):
    """The requested split cannot be produced from the given file."""


class ReportError(DataError):
    """An evaluation report cannot be computed from the given inputs."""


class BackendError(RuntimeError):
    """A model backend failed to produce usable log-probabilities.

    ``retryable`` is True for transport-level failures where a repeat
    attempt could plausibly succeed, False for protocol or invariant
    violations that indicate a broken server or request.
    """

    def __init__(self, message: str, *, retryable: bool = False):
        super().__init__(message)
        self.retryable = retryable


class TrainingError(RuntimeError):
    """Training diverged or could not proceed. Carries the failing step."""

    def __init__(self, message: str, *, step: int | None = None):
        super().__init__(message)
        self.step = step
