from typing import Any, Dict

from ..exceptions import InputError
from .scheme import JeeSchemeLabel


class IngestReport:
    """
    Represents what an ingest kept and dropped.

    Parameters
    ----------
    rows_read
        Rows seen in the input.
    rows_dropped_invalid
        Rows dropped for missing or malformed fields.
    problems_retained
        Problems present in the output.
    problems_filtered_below_threshold
        Problems removed for having too few valid responses.
    rows_filtered_below_threshold
        Valid rows removed together with those problems.
    """

    rows_read: int
    rows_dropped_invalid: int
    problems_retained: int
    problems_filtered_below_threshold: int
    rows_filtered_below_threshold: int

    def __init__(
        self,
        rows_read: int = 0,
        rows_dropped_invalid: int = 0,
        problems_retained: int = 0,
        problems_filtered_below_threshold: int = 0,
        rows_filtered_below_threshold: int = 0,
    ):
        if rows_dropped_invalid > rows_read:
            raise InputError("An ingest cannot drop more rows than it read")

        self.rows_read = rows_read
        self.rows_dropped_invalid = rows_dropped_invalid
        self.problems_retained = problems_retained
        self.problems_filtered_below_threshold = problems_filtered_below_threshold
        self.rows_filtered_below_threshold = rows_filtered_below_threshold

    @property
    def rows_retained(self) -> int:
        return self.rows_read - self.rows_dropped_invalid - self.rows_filtered_below_threshold

    def to_document(self) -> Dict[str, Any]:
        return {
            "rows_read": self.rows_read,
            "rows_dropped_invalid": self.rows_dropped_invalid,
            "rows_filtered_below_threshold": self.rows_filtered_below_threshold,
            "problems_retained": self.problems_retained,
            "problems_filtered_below_threshold": self.problems_filtered_below_threshold,
        }

    def __eq__(self, other: object) -> bool:
        return isinstance(other, IngestReport) and self.to_document() == other.to_document()

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__} read={self.rows_read}, dropped={self.rows_dropped_invalid}, problems={self.problems_retained}>"


class JeeQuestionCounts:
    """
    Represents the published response counts of one JEE Advanced question.

    Parameters
    ----------
    question_id
        The question identifier (i.e, `Q1`).
    correct_count
        Candidates who answered correctly.
    incorrect_count
        Candidates who answered incorrectly.
    unattempted_count
        Candidates who left the question unattempted.
    scheme_label
        The question's marking scheme label.
    """

    question_id: str
    correct_count: int
    incorrect_count: int
    unattempted_count: int
    scheme_label: JeeSchemeLabel

    def __init__(
        self,
        question_id: str,
        correct_count: int,
        incorrect_count: int,
        unattempted_count: int,
        scheme_label: "JeeSchemeLabel | str" = JeeSchemeLabel.PLUS3_MINUS1,
    ):
        question_id = str(question_id).strip()
        if not question_id:
            raise InputError("A JEE question must have a non-empty id")

        for name, count in (
            ("correct", correct_count),
            ("incorrect", incorrect_count),
            ("unattempted", unattempted_count),
        ):
            if isinstance(count, bool) or int(count) != count:
                raise InputError(f"{question_id}: {name} count must be an integer, got {count!r}")
            if count < 0:
                raise InputError(f"{question_id}: {name} count must be non-negative, got {count}")

        try:
            self.scheme_label = JeeSchemeLabel(scheme_label)
        except ValueError:
            raise InputError(
                f"{question_id}: unknown scheme '{scheme_label}'. Expected one of: {JeeSchemeLabel.names()}"
            )

        self.question_id = question_id
        self.correct_count = int(correct_count)
        self.incorrect_count = int(incorrect_count)
        self.unattempted_count = int(unattempted_count)

    @property
    def total(self) -> int:
        """
        Total candidates for this question.
        """

        return self.correct_count + self.incorrect_count + self.unattempted_count

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__} question_id={self.question_id}, total={self.total}, scheme={self.scheme_label}>"
