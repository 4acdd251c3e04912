"""

All exceptions in use by the apme package.

"""

from typing import Iterable, List, Optional

# Base Exception


class APMEException(Exception):
    """Base exception, can be used to catch all package exceptions."""

    exit_code: int = 1

    def __init__(self, message: str):
        self.message = message

        super().__init__(message)


# Generic Exceptions


class InputError(APMEException):
    """Exception raised when an input has the wrong shape or content (empty lists, mixed ids, mismatched lengths, negative counts)."""


class InsufficientData(InputError):
    """Exception raised when a problem has too few responses to aggregate."""

    def __init__(self, problem_id: str, count: int, required: int = 2):
        self.problem_id = problem_id
        self.count = count
        self.required = required

        super().__init__(
            f"Problem '{problem_id}' has {count} response(s); at least {required} are required."
        )


class ProblemSetMismatch(InputError):
    """Exception raised when two inputs do not cover the same problems."""

    def __init__(self, missing: Iterable[str], unexpected: Iterable[str]):
        self.missing = sorted(missing)
        self.unexpected = sorted(unexpected)

        super().__init__(
            f"Problem sets differ. Missing: {self.missing or '-'}; unexpected: {self.unexpected or '-'}."
        )

    @property
    def difference(self) -> List[str]:
        """
        The symmetric difference of both problem sets.
        """

        return sorted(self.missing + self.unexpected)


class SchemaError(APMEException):
    """Exception raised when a file or document does not follow its declared schema."""

    def __init__(self, message: str, names: Optional[Iterable[str]] = None):
        self.names = sorted(names) if names is not None else []

        super().__init__(message)


class DataFileError(APMEException):
    """Exception raised when a data file is missing or cannot be read or written."""

    exit_code = 2

    def __init__(self, path: str, reason: str):
        self.path = path
        self.reason = reason

        super().__init__(f"Cannot access '{path}': {reason}")


# Domain Exceptions


class DomainError(APMEException):
    """Exception raised when a value falls outside the domain of a computation."""


class NonPositiveReward(DomainError):
    """Exception raised when selection probabilities are requested for a non-positive derived performance."""

    def __init__(self, problem_id: str, value: float):
        self.problem_id = problem_id
        self.value = value

        super().__init__(
            f"Problem '{problem_id}' has non-positive derived performance ({value!r}). "
            "Shift the marking scheme (shift_marks) or apply a modulator before assigning probabilities."
        )


class UnshiftedMarks(DomainError):
    """Exception raised when a marking scheme still contains negative marks where only non-negative marks are allowed."""

    def __init__(self, outcome: str, marks: float):
        self.outcome = outcome
        self.marks = marks

        super().__init__(
            f"Outcome '{outcome}' has negative marks ({marks!r}); apply shift_marks first."
        )


class ZeroVariance(DomainError):
    """Exception raised when a statistic needs a non-constant series."""

    def __init__(self, what: str = "actual values"):
        super().__init__(f"The {what} have zero variance.")
