from typing import Any, Dict, Mapping, Optional
import math

from ..data_types import SchemeDocument
from ..exceptions import InputError, SchemaError
from ..utility import InsensitiveEnum

CORRECT = "correct"
INCORRECT = "incorrect"
UNATTEMPTED = "unattempted"

DEFAULT_EPSILON_SMOOTH = 1e-6
DEFAULT_TIME_UNIT_DIVISOR = 1000.0


class MarkingScheme:
    """
    Represents how marks and time turn into performance for one dataset.

    Parameters
    ----------
    outcome_marks
        Marks awarded per outcome label (i.e, `correct`, `incorrect`, `unattempted`). At least one outcome.
    alpha
        The scalar applied to marks before dividing by time. `1` leaves marks unbiased.
    modulator_a1
        Weight of the reward in the modulated return.
    modulator_a2
        Weight of the true value in the modulated return.
    true_value
        The true-value anchor of a question.
    time_unit_divisor
        Converts stored milliseconds into the performance time unit. Defaults to `1000` (seconds).
    epsilon_smooth
        Added to the standard deviation when computing derived performance. Defaults to `1e-6`.
    """

    alpha: float
    outcome_marks: Dict[str, float]
    modulator_a1: float
    modulator_a2: float
    true_value: float
    time_unit_divisor: float
    epsilon_smooth: float

    def __init__(
        self,
        outcome_marks: Mapping[str, float],
        *,
        alpha: float = 1.0,
        modulator_a1: float = 1.0,
        modulator_a2: float = 0.0,
        true_value: float = 1.0,
        time_unit_divisor: float = DEFAULT_TIME_UNIT_DIVISOR,
        epsilon_smooth: float = DEFAULT_EPSILON_SMOOTH,
    ):
        if not outcome_marks:
            raise InputError("A marking scheme needs at least one outcome")

        self.outcome_marks = {
            str(outcome).lower(): _finite(f"marks for '{outcome}'", marks)
            for outcome, marks in outcome_marks.items()
        }
        self.alpha = _positive("alpha", alpha)
        self.true_value = _positive("true_value", true_value)
        self.time_unit_divisor = _positive("time_unit_divisor", time_unit_divisor)
        self.modulator_a1 = _finite("modulator_a1", modulator_a1)
        self.modulator_a2 = _finite("modulator_a2", modulator_a2)

        self.epsilon_smooth = _finite("epsilon_smooth", epsilon_smooth)
        if self.epsilon_smooth < 0:
            raise InputError(f"epsilon_smooth must be non-negative, got {epsilon_smooth!r}")

    @classmethod
    def skyben(cls, **kwargs) -> "MarkingScheme":
        """
        SKYBEN rubric: 5 for a correct answer, 0 for a wrong one.
        """

        return cls({CORRECT: 5.0, INCORRECT: 0.0}, **kwargs)

    @classmethod
    def timss(cls, **kwargs) -> "MarkingScheme":
        """
        TIMSS rubric: 1 for a correct answer, 0 for a wrong one.
        """

        return cls({CORRECT: 1.0, INCORRECT: 0.0}, **kwargs)

    @classmethod
    def jee(cls, label: "JeeSchemeLabel", **kwargs) -> "MarkingScheme":
        """
        JEE Advanced rubric for a question's scheme label. Marks are not shifted.
        """

        return cls(JeeSchemeLabel(label).marks, **kwargs)

    @property
    def min_marks(self) -> float:
        return min(self.outcome_marks.values())

    @property
    def max_marks(self) -> float:
        return max(self.outcome_marks.values())

    @property
    def correct_marks(self) -> float:
        """
        Marks for a correct answer, or the highest marks if no outcome is labeled correct.
        """

        return self.outcome_marks.get(CORRECT, self.max_marks)

    def marks_for(self, outcome: str) -> float:
        try:
            return self.outcome_marks[outcome.lower()]
        except KeyError:
            raise InputError(f"The marking scheme has no '{outcome}' outcome")

    def replace(self, **changes: Any) -> "MarkingScheme":
        """
        A copy of this scheme with some fields changed.
        """

        fields = {**self.to_kwargs(), **changes}
        return MarkingScheme(fields.pop("outcome_marks"), **fields)

    def to_kwargs(self) -> Dict[str, Any]:
        return {
            "outcome_marks": dict(self.outcome_marks),
            "alpha": self.alpha,
            "modulator_a1": self.modulator_a1,
            "modulator_a2": self.modulator_a2,
            "true_value": self.true_value,
            "time_unit_divisor": self.time_unit_divisor,
            "epsilon_smooth": self.epsilon_smooth,
        }

    # scheme files

    DOCUMENT_KEYS = (
        "alpha",
        "marks",
        "modulator",
        "true_value",
        "time_unit_divisor",
        "epsilon_smooth",
    )

    @classmethod
    def from_document(
        cls, document: Any, base: Optional["MarkingScheme"] = None
    ) -> "MarkingScheme":
        """
        Parse a scheme file document. Missing keys fall back to `base` (or the defaults); unknown keys are rejected.
        """

        if not isinstance(document, dict):
            raise SchemaError("A scheme file must contain a JSON object")

        unknown = set(document) - set(cls.DOCUMENT_KEYS)
        if unknown:
            raise SchemaError(f"Unknown scheme file keys: {sorted(unknown)}", unknown)

        fields = (base or cls.timss()).to_kwargs()

        if "marks" in document:
            if not isinstance(document["marks"], dict):
                raise SchemaError("'marks' must map outcome labels to numbers")
            fields["outcome_marks"] = document["marks"]

        if "modulator" in document:
            modulator = document["modulator"]
            if not isinstance(modulator, dict):
                raise SchemaError("'modulator' must be an object with 'a1' and 'a2'")
            unknown = set(modulator) - {"a1", "a2"}
            if unknown:
                raise SchemaError(f"Unknown modulator keys: {sorted(unknown)}", unknown)
            fields["modulator_a1"] = modulator.get("a1", fields["modulator_a1"])
            fields["modulator_a2"] = modulator.get("a2", fields["modulator_a2"])

        for key in ("alpha", "true_value", "time_unit_divisor", "epsilon_smooth"):
            if key in document:
                fields[key] = document[key]

        try:
            return cls(fields.pop("outcome_marks"), **fields)
        except (TypeError, ValueError, InputError) as e:
            raise SchemaError(f"Invalid scheme file value: {e}")

    def to_document(self) -> SchemeDocument:
        return {
            "alpha": self.alpha,
            "marks": dict(self.outcome_marks),
            "modulator": {"a1": self.modulator_a1, "a2": self.modulator_a2},
            "true_value": self.true_value,
            "time_unit_divisor": self.time_unit_divisor,
            "epsilon_smooth": self.epsilon_smooth,
        }

    def __eq__(self, other: object) -> bool:
        return isinstance(other, MarkingScheme) and self.to_kwargs() == other.to_kwargs()

    def __ne__(self, other: object) -> bool:
        return not self.__eq__(other)

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__} marks={self.outcome_marks}, alpha={self.alpha}, modulator=({self.modulator_a1}, {self.modulator_a2})>"


class JeeSchemeLabel(InsensitiveEnum):
    """
    Enum that represents the marking scheme label of a JEE Advanced question.
    """

    PLUS3_MINUS1 = "plus3_minus1"
    PLUS4_ZERO = "plus4_zero"

    @property
    def marks(self) -> Dict[str, float]:
        if self is JeeSchemeLabel.PLUS3_MINUS1:
            return {CORRECT: 3.0, INCORRECT: -1.0, UNATTEMPTED: 0.0}
        return {CORRECT: 4.0, INCORRECT: 0.0, UNATTEMPTED: 0.0}


def _finite(name: str, value: Any) -> float:
    if isinstance(value, bool):
        raise InputError(f"{name} must be a number, got {value!r}")
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise InputError(f"{name} must be a number, got {value!r}")
    if not math.isfinite(value):
        raise InputError(f"{name} must be finite, got {value!r}")
    return value


def _positive(name: str, value: Any) -> float:
    value = _finite(name, value)
    if value <= 0:
        raise InputError(f"{name} must be positive, got {value!r}")
    return value
