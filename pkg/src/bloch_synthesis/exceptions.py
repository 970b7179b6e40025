"""
Error types raised by the synthesis library.

Every error carries a stable ``code`` so the CLI and the tool server can report
it as machine-readable JSON.
"""

from typing import Any, Dict, Optional


class BlochSynthesisError(Exception):
    """
    Base class for all library errors.

    Args:
        message: Human readable description
        details: Extra numeric context (residuals, offending values)
    """

    code = "BlochSynthesisError"

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details: Dict[str, Any] = details or {}

    def to_dict(self) -> Dict[str, Any]:
        return {"error": self.code, "message": self.message, "details": self.details}


class InvalidArguments(BlochSynthesisError):
    code = "InvalidArguments"


class NonPositiveE(BlochSynthesisError):
    code = "NonPositiveE"


class AlphaOutOfRange(BlochSynthesisError):
    code = "AlphaOutOfRange"


class NotNormalized(BlochSynthesisError):
    code = "NotNormalized"


class EmptySchedule(BlochSynthesisError):
    code = "EmptySchedule"


class NoSwitching(BlochSynthesisError):
    code = "NoSwitching"


class DegenerateCovector(BlochSynthesisError):
    code = "DegenerateCovector"


class NoRoot(BlochSynthesisError):
    code = "NoRoot"


class RootOutsideRange(BlochSynthesisError):
    code = "RootOutsideRange"


class BetaNotQuarterPi(BlochSynthesisError):
    code = "BetaNotQuarterPi"


class DomainError(BlochSynthesisError):
    code = "DomainError"


class DegenerateFields(BlochSynthesisError):
    code = "DegenerateFields"


class TargetInCutLocusNeighborhood(BlochSynthesisError):
    code = "TargetInCutLocusNeighborhood"


class NoConvergence(BlochSynthesisError):
    code = "NoConvergence"


class SolveFailed(BlochSynthesisError):
    code = "SolveFailed"


class BudgetExceeded(BlochSynthesisError):
    code = "BudgetExceeded"
