"""
Exception hierarchy for ramcode.

Every error carries a stable ``code`` that the CLI reports verbatim.
"""

from typing import Any, Dict, Optional


class RamcodeError(Exception):
    """Base class for all ramcode errors."""

    code = "error"

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self.details: Dict[str, Any] = details

    def to_dict(self) -> Dict[str, Any]:
        """Machine-readable form used by the CLI."""
        payload: Dict[str, Any] = {"error": self.code, "message": self.message}
        if self.details:
            payload["details"] = self.details
        return payload


class ShapeMismatchError(RamcodeError, ValueError):
    code = "shape_mismatch"


class BudgetExceededError(RamcodeError):
    """An enumeration would exceed the configured work budget."""

    code = "budget_exceeded"

    def __init__(self, required: int, budget: int, what: str = "enumeration"):
        super().__init__(
            f"{what} needs {required} candidates, budget is {budget}",
            required=required,
            budget=budget,
        )
        self.required = required
        self.budget = budget


class ChainValidationError(RamcodeError):
    """A boundary composition does not vanish."""

    code = "invalid_complex"

    def __init__(self, message: str, grade: Optional[int] = None, face: Optional[int] = None):
        super().__init__(message, grade=grade, face=face)
        self.grade = grade
        self.face = face


class InvalidGradeError(RamcodeError, ValueError):
    code = "invalid_grade"


class FieldConstructionError(RamcodeError, ValueError):
    code = "invalid_field"


class GroupSizeExceededError(RamcodeError):
    code = "group_too_large"


class RankDeficiencyError(RamcodeError, ValueError):
    code = "rank_deficient"


class InfeasibleDegreesError(RamcodeError, ValueError):
    code = "infeasible_degrees"


class ParityError(RamcodeError, ValueError):
    code = "odd_parity"


class InconsistentSyndromeError(RamcodeError, ValueError):
    code = "inconsistent_syndrome"


class UnknownVertexError(RamcodeError, KeyError):
    code = "unknown_vertex"

    def __str__(self) -> str:
        return self.message


class FileFormatError(RamcodeError, ValueError):
    code = "bad_file"


class DecoderRadiusError(RamcodeError, ValueError):
    """A claimed decoder radius exceeds (d - 1) // 2 for a measured distance d."""

    code = "radius_too_large"
