from typing import Dict, Iterable, List, Optional, Union
import math

from ..exceptions import DomainError, InputError


class ResponseRecord:
    """
    Represents one solver attempt on one problem.

    Parameters
    ----------
    problem_id
        The problem identifier. Must be non-empty.
    time
        Time taken, in milliseconds. Must be a positive integer.
    marks
        The raw rubric marks awarded. May be negative under penalty schemes.
    """

    __slots__ = ("_problem_id", "_time", "_marks")

    def __init__(self, problem_id: str, time: int, marks: Union[int, float]):
        problem_id = str(problem_id).strip()
        if not problem_id:
            raise InputError("A response record must have a non-empty problem id")

        if isinstance(time, float):
            if not time.is_integer():
                raise InputError(f"Time must be whole milliseconds, got {time!r}")
            time = int(time)
        if isinstance(time, bool) or not isinstance(time, int):
            raise InputError(f"Time must be an integer number of milliseconds, got {time!r}")
        if time <= 0:
            raise DomainError(f"Time must be positive, got {time} ms for '{problem_id}'")

        marks = float(marks)
        if not math.isfinite(marks):
            raise InputError(f"Marks must be finite, got {marks!r} for '{problem_id}'")

        self._problem_id = problem_id
        self._time = time
        self._marks = marks

    @property
    def problem_id(self) -> str:
        return self._problem_id

    @property
    def time(self) -> int:
        return self._time

    @property
    def marks(self) -> float:
        return self._marks

    def with_time(self, time: int) -> "ResponseRecord":
        """
        A copy of this record with a different time.
        """

        return ResponseRecord(self.problem_id, time, self.marks)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, ResponseRecord)
            and self.problem_id == other.problem_id
            and self.time == other.time
            and self.marks == other.marks
        )

    def __ne__(self, other: object) -> bool:
        return not self.__eq__(other)

    def __hash__(self) -> int:
        return hash((self.problem_id, self.time, self.marks))

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__} problem_id={self.problem_id}, time={self.time}, marks={self.marks}>"


class RecordList(List[ResponseRecord]):
    def copy(self):
        return RecordList(self)

    @property
    def problem_ids(self) -> List[str]:
        """
        Distinct problem ids in order of first appearance.
        """

        return list(dict.fromkeys(r.problem_id for r in self))

    def by_problem(self) -> Dict[str, "RecordList"]:
        """
        Records grouped by problem id. Groups follow first appearance and keep record order.
        """

        groups: Dict[str, RecordList] = {}
        for record in self:
            groups.setdefault(record.problem_id, RecordList()).append(record)
        return groups

    def find_problem(self, problem_id: str) -> Optional["RecordList"]:
        """
        All records of a problem, if any.
        """

        found = RecordList(r for r in self if r.problem_id == problem_id)
        return found or None

    def scaled_times(self, factor: float) -> "RecordList":
        """
        A copy with every time multiplied by `factor` (rounded to whole milliseconds).
        """

        if factor <= 0:
            raise InputError(f"Time scale factor must be positive, got {factor!r}")
        return RecordList(r.with_time(int(round(r.time * factor))) for r in self)

    @classmethod
    def of(cls, records: Iterable[ResponseRecord]) -> "RecordList":
        return records if isinstance(records, RecordList) else cls(records)
