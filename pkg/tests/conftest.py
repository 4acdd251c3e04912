from pathlib import Path
from typing import List

import numpy as np
import pandas as pd
import pytest

from apme import MarkingScheme, ProblemStats, RecordList, ResponseRecord


SKYBEN_PROBLEMS = list("ABCDEFGHIJ")

# (mean, std) of instantaneous performance for the top and bottom SKYBEN categories
SKYBEN_MOMENTS = {
    "A": (6.94, 2.16),
    "C": (4.39, 2.84),
    "H": (0.71, 1.42),
    "J": (0.49, 1.17),
}


def build_skyben_records(per_problem: int = 40, seed: int = 7) -> RecordList:
    rng = np.random.default_rng(seed)
    records = RecordList()
    for index, problem_id in enumerate(SKYBEN_PROBLEMS):
        success = 0.85 - 0.07 * index
        for i in range(per_problem):
            # one success and one failure per problem keep every variance positive
            if i == 0:
                marks = 5.0
            elif i == 1:
                marks = 0.0
            else:
                marks = 5.0 if rng.random() < success else 0.0
            time = int(rng.integers(20_000, 300_000))
            records.append(ResponseRecord(problem_id, time, marks))
    return records


def moment_records(problem_id: str, mean: float, std: float) -> List[ResponseRecord]:
    """
    Four one-second records whose performance has exactly `mean` and sample std `std`.
    """

    spread = std * (3 / 4) ** 0.5
    return [
        ResponseRecord(problem_id, 1000, mean - spread),
        ResponseRecord(problem_id, 1000, mean - spread),
        ResponseRecord(problem_id, 1000, mean + spread),
        ResponseRecord(problem_id, 1000, mean + spread),
    ]


def write_canonical(records, path: Path) -> Path:
    pd.DataFrame(
        {
            "problem_id": [r.problem_id for r in records],
            "milsec": [r.time for r in records],
            "marks": [r.marks for r in records],
        }
    ).to_csv(path, index=False)
    return path


@pytest.fixture
def skyben_records() -> RecordList:
    return build_skyben_records()


@pytest.fixture
def skyben_csv(tmp_path: Path, skyben_records: RecordList) -> Path:
    frame = pd.DataFrame(
        {
            "student_id": [f"S{i % 25:03d}" for i in range(len(skyben_records))],
            "problem_id": [r.problem_id for r in skyben_records],
            "milsec": [r.time for r in skyben_records],
            "marks": [int(r.marks) for r in skyben_records],
        }
    )
    path = tmp_path / "skyben.csv"
    frame.to_csv(path, index=False)
    return path


@pytest.fixture
def table_moment_records() -> RecordList:
    records = RecordList()
    for problem_id, (mean, std) in SKYBEN_MOMENTS.items():
        records.extend(moment_records(problem_id, mean, std))
    return records


@pytest.fixture
def unbiased_scheme() -> MarkingScheme:
    return MarkingScheme.timss(epsilon_smooth=0.0)


def stats_for(psi: List[float]) -> List[ProblemStats]:
    return [
        ProblemStats(f"P{i:02d}", 2, mean_eta=value, std_eta=1.0, psi=value)
        for i, value in enumerate(psi)
    ]
