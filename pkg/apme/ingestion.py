"""

Readers that turn dataset exports into validated response records.

"""

from typing import Iterable, List, Optional, Sequence, Tuple
import logging
import math
import re

import pandas as pd

from .data_types import (
    CANONICAL_COLUMNS,
    JEE_COLUMNS,
    TIMSS_COLUMNS,
    TimssRawRow,
)
from .exceptions import InputError, SchemaError, UnshiftedMarks
from .metrics import shift_marks
from .models import (
    CORRECT,
    INCORRECT,
    UNATTEMPTED,
    IngestReport,
    JeeQuestionCounts,
    JeeSchemeLabel,
    MarkingScheme,
    RecordList,
    ResponseRecord,
)
from .utility import read_frame, write_frame
from .utility.files import PathLike

logger = logging.getLogger(__name__)

__all__ = [
    "DEFAULT_MIN_RESPONSES",
    "JEE_EXAM_DURATION_MS",
    "load_generic_csv",
    "load_skyben_csv",
    "write_records_csv",
    "read_timss_csv",
    "preprocess_timss",
    "load_timss_csv",
    "load_jee_counts",
    "expand_jee_counts",
    "ingest_jee",
]

DEFAULT_MIN_RESPONSES = 3500
JEE_EXAM_DURATION_MS = 3 * 60 * 60 * 1000

_INTEGER = r"\s*\+?\d{1,18}\s*"


def _require_columns(frame: pd.DataFrame, columns: Sequence[str], path: PathLike) -> None:
    missing = [c for c in columns if c not in frame.columns]
    if missing:
        raise SchemaError(f"'{path}' is missing required column(s): {missing}", missing)


def _to_float(value: str) -> float:
    try:
        return float(value)
    except (TypeError, ValueError):
        return math.nan


def _records_from_canonical(
    frame: pd.DataFrame, allowed_marks: Optional[Iterable[float]] = None
) -> Tuple[RecordList, int]:
    problem_ids = frame["problem_id"].str.strip()
    milsec_text = frame["milsec"]
    marks = frame["marks"].map(_to_float).astype("float64")

    valid = (
        (problem_ids != "")
        & milsec_text.str.fullmatch(_INTEGER, flags=re.ASCII).fillna(False).astype(bool)
        & marks.map(math.isfinite).astype(bool)
    )
    milsec = pd.Series(0, index=frame.index, dtype="int64")
    milsec[valid] = milsec_text[valid].str.strip().astype("int64")
    valid &= milsec > 0

    if allowed_marks is not None:
        valid &= marks.isin(list(allowed_marks))

    records = RecordList(
        ResponseRecord(pid, int(t), float(m))
        for pid, t, m in zip(problem_ids[valid], milsec[valid], marks[valid])
    )
    return records, int((~valid).sum())


def load_generic_csv(
    path: PathLike, *, allowed_marks: Optional[Iterable[float]] = None
) -> Tuple[RecordList, IngestReport]:
    """
    Load a canonical `problem_id,milsec,marks` file. Malformed rows and non-positive times are dropped and counted.

    Parameters
    ----------
    path
        The CSV file.
    allowed_marks
        If given, rows whose marks are not one of these values are dropped too.
    """

    frame = read_frame(path)
    _require_columns(frame, CANONICAL_COLUMNS, path)

    records, dropped = _records_from_canonical(frame, allowed_marks)
    report = IngestReport(
        rows_read=len(frame),
        rows_dropped_invalid=dropped,
        problems_retained=len(records.problem_ids),
    )

    logger.info(
        "Loaded %d record(s) from %s (%d dropped, %d problem(s))",
        len(records),
        path,
        dropped,
        report.problems_retained,
    )
    return records, report


def load_skyben_csv(path: PathLike) -> Tuple[RecordList, IngestReport]:
    """
    Load a SKYBEN export. Same columns as the canonical file plus an optional `student_id`; marks must follow the rubric (0 or 5).
    """

    rubric = MarkingScheme.skyben().outcome_marks.values()
    return load_generic_csv(path, allowed_marks=rubric)


def write_records_csv(records: Iterable[ResponseRecord], path: PathLike) -> None:
    """
    Write records as a canonical CSV. Reloading it gives back the same records.
    """

    records = list(records)
    frame = pd.DataFrame(
        {
            "problem_id": [r.problem_id for r in records],
            "milsec": pd.Series([r.time for r in records], dtype="int64"),
            "marks": [repr(r.marks) for r in records],
        },
        columns=list(CANONICAL_COLUMNS),
    )
    write_frame(frame, path)


# TIMSS


def read_timss_csv(path: PathLike) -> List[TimssRawRow]:
    """
    Read a raw TIMSS export. Columns beyond `problem_id,start_time,end_time,correct` are kept under `extra`.
    """

    frame = read_frame(path)
    _require_columns(frame, TIMSS_COLUMNS, path)

    extra_columns = [c for c in frame.columns if c not in TIMSS_COLUMNS]
    rows: List[TimssRawRow] = []
    for row in frame.to_dict("records"):
        raw: TimssRawRow = {
            "problem_id": row["problem_id"],
            "start_time": row["start_time"],
            "end_time": row["end_time"],
            "correct": row["correct"],
        }
        if extra_columns:
            raw["extra"] = {c: row[c] for c in extra_columns}
        rows.append(raw)
    return rows


def _parse_timestamps(values: pd.Series) -> pd.Series:
    # timezone-naive values are read as UTC
    return pd.to_datetime(values.str.strip(), errors="coerce", utc=True, format="ISO8601")


def _preprocess_timss_frame(
    frame: pd.DataFrame, min_responses: int
) -> Tuple[RecordList, IngestReport]:
    if min_responses < 1:
        raise InputError(f"min_responses must be at least 1, got {min_responses}")

    problem_ids = frame["problem_id"].astype(str).str.strip()
    start = _parse_timestamps(frame["start_time"].astype(str))
    end = _parse_timestamps(frame["end_time"].astype(str))
    correct = pd.to_numeric(frame["correct"].astype(str).str.strip(), errors="coerce")

    valid = (problem_ids != "") & start.notna() & end.notna() & correct.isin([0, 1])

    milsec = pd.Series(0, index=frame.index, dtype="int64")
    milsec[valid] = ((end[valid] - start[valid]) // pd.Timedelta(milliseconds=1)).astype(
        "int64"
    )
    valid &= milsec > 0
    dropped = int((~valid).sum())

    counts = problem_ids[valid].value_counts()
    kept_problems = set(counts[counts >= min_responses].index)
    filtered = counts[counts < min_responses]
    kept = valid & problem_ids.isin(kept_problems)

    for problem_id, count in filtered.items():
        logger.debug(
            "Problem %s has %d valid response(s), below %d; excluded",
            problem_id,
            count,
            min_responses,
        )

    records = RecordList(
        ResponseRecord(pid, int(t), float(c))
        for pid, t, c in zip(problem_ids[kept], milsec[kept], correct[kept])
    )
    report = IngestReport(
        rows_read=len(frame),
        rows_dropped_invalid=dropped,
        problems_retained=len(kept_problems),
        problems_filtered_below_threshold=len(filtered),
        rows_filtered_below_threshold=int(filtered.sum()),
    )

    logger.info(
        "TIMSS: kept %d problem(s) with >= %d responses, filtered %d, dropped %d invalid row(s)",
        report.problems_retained,
        min_responses,
        report.problems_filtered_below_threshold,
        dropped,
    )
    return records, report


def preprocess_timss(
    rows: Sequence[TimssRawRow], min_responses: int = DEFAULT_MIN_RESPONSES
) -> Tuple[RecordList, IngestReport]:
    """
    Turn raw TIMSS rows into records.

    Rows with a missing or unparseable timestamp, a non-positive duration or a correct flag other than 0/1 are dropped.
    Durations are `end - start` truncated to whole milliseconds; marks are the correct flag. Problems with fewer than
    `min_responses` valid rows are excluded entirely.
    """

    frame = pd.DataFrame(
        {column: [row.get(column, "") for row in rows] for column in TIMSS_COLUMNS},
        columns=list(TIMSS_COLUMNS),
        dtype=object,
    ).fillna("")
    return _preprocess_timss_frame(frame, min_responses)


def load_timss_csv(
    path: PathLike, min_responses: int = DEFAULT_MIN_RESPONSES
) -> Tuple[RecordList, IngestReport]:
    """
    `preprocess_timss` straight from a file, without building row dicts.
    """

    frame = read_frame(path)
    _require_columns(frame, TIMSS_COLUMNS, path)
    return _preprocess_timss_frame(frame, min_responses)


# JEE


def load_jee_counts(path: PathLike) -> List[JeeQuestionCounts]:
    """
    Read JEE question counts. Every row needs a known scheme label; partial-credit questions have none and are rejected.
    """

    frame = read_frame(path)
    _require_columns(frame, JEE_COLUMNS, path)

    questions: List[JeeQuestionCounts] = []
    seen = set()
    for row in frame.to_dict("records"):
        question_id = row["question_id"].strip()
        label = row["scheme"].strip()

        if question_id in seen:
            raise InputError(f"'{path}': duplicate question '{question_id}'")
        seen.add(question_id)

        counts = []
        for column in ("correct", "incorrect", "unattempted"):
            text = row[column].strip()
            if not re.fullmatch(r"-?\d+", text, re.ASCII):
                raise InputError(f"'{path}': {question_id} has a non-integer {column} count '{text}'")
            counts.append(int(text))

        if not JeeSchemeLabel.is_member(label):
            raise SchemaError(
                f"'{path}': {question_id} has unknown scheme '{label}'. Expected one of: {JeeSchemeLabel.names()}",
                [label],
            )

        questions.append(JeeQuestionCounts(question_id, *counts, scheme_label=label))

    return questions


def expand_jee_counts(
    counts: JeeQuestionCounts, scheme: MarkingScheme, nominal_time_ms: int
) -> RecordList:
    """
    One record per candidate: correct, then incorrect, then unattempted, all at `nominal_time_ms`.

    Parameters
    ----------
    counts
        The question's counts.
    scheme
        A shifted marking scheme with `correct`, `incorrect` and `unattempted` outcomes.
    nominal_time_ms
        The time given to every record.
    """

    if isinstance(nominal_time_ms, bool) or int(nominal_time_ms) != nominal_time_ms:
        raise InputError(f"nominal_time_ms must be an integer, got {nominal_time_ms!r}")
    if nominal_time_ms <= 0:
        raise InputError(f"nominal_time_ms must be positive, got {nominal_time_ms}")

    records = RecordList()
    for outcome, count in (
        (CORRECT, counts.correct_count),
        (INCORRECT, counts.incorrect_count),
        (UNATTEMPTED, counts.unattempted_count),
    ):
        marks = scheme.marks_for(outcome)
        if marks < 0:
            raise UnshiftedMarks(outcome, marks)
        if count:
            records.extend([ResponseRecord(counts.question_id, int(nominal_time_ms), marks)] * count)

    return records


def ingest_jee(
    questions: Sequence[JeeQuestionCounts],
    nominal_time_ms: Optional[int] = None,
    *,
    exam_duration_ms: int = JEE_EXAM_DURATION_MS,
) -> Tuple[RecordList, IngestReport]:
    """
    Expand every question with its own shifted scheme. The nominal time defaults to the exam duration split evenly
    across questions.
    """

    if not questions:
        raise InputError("No JEE questions to ingest")

    if nominal_time_ms is None:
        nominal_time_ms = max(1, exam_duration_ms // len(questions))

    records = RecordList()
    for question in questions:
        scheme = shift_marks(MarkingScheme.jee(question.scheme_label))
        records.extend(expand_jee_counts(question, scheme, nominal_time_ms))

    logger.info(
        "JEE: expanded %d question(s) into %d record(s) at %d ms each",
        len(questions),
        len(records),
        nominal_time_ms,
    )
    report = IngestReport(rows_read=len(questions), problems_retained=len(questions))
    return records, report
