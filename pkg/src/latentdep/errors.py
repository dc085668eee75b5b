"""
Error hierarchy for latentdep.

All errors derive from LatentDepError, which is an Exception but not a
ValueError: raising one inside a pydantic validator propagates the typed
error to the caller instead of being folded into a ValidationError.
"""
from typing import Optional


class LatentDepError(Exception):
    """Base class for library errors. `exit_code` is used by the CLI."""
    exit_code: int = 70


class TooFewPoints(LatentDepError):
    """Fewer observations than an operation needs."""


class NonFiniteValue(LatentDepError):
    """A statistic value is NaN or infinite."""

    def __init__(self, sequence: int, index: int, value: float):
        self.sequence = sequence
        self.index = index
        self.value = value
        super().__init__(f"non-finite value {value!r} in t{sequence} at index {index}")


class LengthMismatch(LatentDepError):
    """The two sequences are not index-paired (different lengths)."""


class DegenerateInput(LatentDepError):
    """Input admits no informative grid cell (e.g. a constant sequence)."""


class InvalidSurvival(LatentDepError):
    """A supplied survival function returned values outside [0, 1]."""


class InvalidConfig(LatentDepError):
    """Inference or experiment configuration out of range."""


class InvalidCalibration(LatentDepError):
    """Calibration parameters violate the sparsity/dependence constraints."""


class CountOverflow(LatentDepError):
    """Requested signal counts do not fit in p features."""


class EmptyAfterRestriction(LatentDepError):
    """No ordered p-value falls at or below 1/2."""


# --- CLI-facing errors ---

class UsageError(LatentDepError):
    exit_code = 2


class InputNotFound(LatentDepError):
    exit_code = 66


class MalformedInput(LatentDepError):
    exit_code = 65

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
