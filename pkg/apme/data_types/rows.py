"""

CSV row types. Raw values are kept as strings until validated.

"""

from typing import Dict, Tuple, TypedDict

__all__ = [
    "CANONICAL_COLUMNS",
    "TIMSS_COLUMNS",
    "JEE_COLUMNS",
    "STATS_COLUMNS",
    "RANKING_COLUMNS",
    "TRACE_COLUMNS",
    "TimssRawRow",
]

CANONICAL_COLUMNS: Tuple[str, ...] = ("problem_id", "milsec", "marks")
TIMSS_COLUMNS: Tuple[str, ...] = ("problem_id", "start_time", "end_time", "correct")
JEE_COLUMNS: Tuple[str, ...] = (
    "question_id",
    "correct",
    "incorrect",
    "unattempted",
    "scheme",
)
STATS_COLUMNS: Tuple[str, ...] = (
    "problem_id",
    "k",
    "mean_eta",
    "std_eta",
    "psi",
    "probability",
    "degenerate",
)
RANKING_COLUMNS: Tuple[str, ...] = ("rank", "problem_id", "psi", "mean_eta", "std_eta")
TRACE_COLUMNS: Tuple[str, ...] = ("step", "run", "arm", "reward")


class _TimssRequired(TypedDict):
    problem_id: str
    start_time: str
    end_time: str
    correct: str


class TimssRawRow(_TimssRequired, total=False):
    # any other columns of the release pass through untouched
    extra: Dict[str, str]
