"""

SVG figures with a sidecar CSV holding exactly the plotted series.

"""

from pathlib import Path
from typing import Optional
import logging

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
import pandas as pd

from .data_types import CANONICAL_COLUMNS, TRACE_COLUMNS
from .exceptions import InputError, SchemaError
from .utility import TitledEnum, atomic_path, read_frame, write_frame
from .utility.files import PathLike

logger = logging.getLogger(__name__)

__all__ = [
    "PlotKind",
    "average_reward_series",
    "selection_series",
    "marks_series",
    "regret_series",
    "load_series",
    "render",
    "sidecar_path",
]

# fixed ids and no timestamp, so identical series give identical files
SVG_RC = {
    "svg.hashsalt": "apme",
    "svg.fonttype": "none",
}


class PlotKind(TitledEnum):
    """
    Enum that represents a figure kind.
    """

    AVG_REWARD = ("avg_reward", "Average Reward Over Time")
    SELECTIONS = ("selections", "Cumulative count of arm selections Over Time")
    MARKS_HIST = ("marks_hist", "Distribution of marks")
    REGRET = ("regret", "Cumulative regret Over Time")


def _is_curves(frame: pd.DataFrame) -> bool:
    return "avg_reward" in frame.columns


def _numeric(frame: pd.DataFrame, columns, path: PathLike) -> pd.DataFrame:
    missing = [c for c in columns if c not in frame.columns]
    if missing:
        raise SchemaError(f"'{path}' is missing required column(s): {missing}", missing)
    try:
        return frame[list(columns)].apply(pd.to_numeric, errors="raise")
    except (TypeError, ValueError) as e:
        raise SchemaError(f"'{path}' has non-numeric values: {e}")


def average_reward_series(frame: pd.DataFrame, path: PathLike = "<trace>") -> pd.DataFrame:
    """
    `step,avg_reward`: prefix mean of rewards per run, averaged over runs. Also accepts a curves file.
    """

    if _is_curves(frame):
        return _numeric(frame, ("step", "avg_reward"), path).astype({"step": "int64"})

    trace = _numeric(frame, TRACE_COLUMNS, path).sort_values(["run", "step"], kind="stable")
    trace["avg_reward"] = trace.groupby("run")["reward"].cumsum() / trace["step"]
    series = trace.groupby("step", sort=True)["avg_reward"].mean()
    return pd.DataFrame({"step": series.index.astype("int64"), "avg_reward": series.values})


def selection_series(
    frame: pd.DataFrame, path: PathLike = "<trace>", num_arms: Optional[int] = None
) -> pd.DataFrame:
    """
    `step,arm_0_count,...`: cumulative pulls per arm, averaged over runs. Also accepts a curves file.
    """

    if _is_curves(frame):
        columns = ["step"] + [c for c in frame.columns if c.startswith("arm_")]
        return _numeric(frame, columns, path).astype({"step": "int64"})

    trace = _numeric(frame, TRACE_COLUMNS, path).sort_values(["run", "step"], kind="stable")
    if len(trace) == 0:
        raise InputError(f"'{path}' holds no pulls")
    arms = int(trace["arm"].max()) + 1 if num_arms is None else num_arms
    if arms < 1:
        raise InputError(f"'{path}' holds no pulls")

    steps = np.sort(trace["step"].unique())
    runs = trace["run"].unique()
    counts = np.zeros((len(steps), arms), dtype=np.float64)
    for _, run in trace.groupby("run", sort=True):
        chosen = np.zeros((len(run), arms), dtype=np.int64)
        chosen[np.arange(len(run)), run["arm"].to_numpy()] = 1
        counts += np.cumsum(chosen, axis=0)
    counts /= len(runs)

    series = pd.DataFrame({"step": steps.astype("int64")})
    for arm in range(arms):
        series[f"arm_{arm}_count"] = counts[:, arm]
    return series


def marks_series(frame: pd.DataFrame, path: PathLike = "<records>") -> pd.DataFrame:
    """
    `marks,count` over every record.
    """

    records = _numeric(frame, CANONICAL_COLUMNS[1:], path)
    counts = records["marks"].value_counts().sort_index()
    return pd.DataFrame({"marks": counts.index.astype("float64"), "count": counts.values})


def regret_series(frame: pd.DataFrame, path: PathLike = "<regret>") -> pd.DataFrame:
    return _numeric(frame, ("step", "regret"), path).astype({"step": "int64"})


def load_series(kind: PlotKind, path: PathLike) -> pd.DataFrame:
    frame = read_frame(path)
    if kind is PlotKind.AVG_REWARD:
        return average_reward_series(frame, path)
    if kind is PlotKind.SELECTIONS:
        return selection_series(frame, path)
    if kind is PlotKind.MARKS_HIST:
        return marks_series(frame, path)
    return regret_series(frame, path)


def sidecar_path(path: PathLike) -> Path:
    return Path(path).with_suffix(".csv")


def _draw(kind: PlotKind, series: pd.DataFrame, ax) -> None:
    if kind is PlotKind.MARKS_HIST:
        labels = [f"{m:g}" for m in series["marks"]]
        ax.bar(labels, series["count"], color="tab:blue")
        ax.set_xlabel("Marks")
        ax.set_ylabel("Count")
        return

    x = series["step"]
    if kind is PlotKind.SELECTIONS:
        for column in series.columns[1:]:
            ax.plot(x, series[column], label=column.replace("_count", "").replace("_", " "))
        ax.set_ylabel("Cumulative selections")
        if len(series.columns) <= 25:
            ax.legend(loc="upper left", fontsize="small", ncol=2)
    elif kind is PlotKind.REGRET:
        ax.plot(x, series["regret"], color="tab:red")
        ax.set_ylabel("Cumulative regret")
    else:
        ax.plot(x, series["avg_reward"], color="tab:blue")
        ax.set_ylabel("Average reward")

    ax.set_xlabel("Step")
    ax.grid(True, alpha=0.3)


def render(kind: PlotKind, series: pd.DataFrame, path: PathLike) -> Path:
    """
    Write the SVG to `path` and its series to the sidecar CSV next to it. Returns the sidecar path.
    """

    sidecar = sidecar_path(path)
    with plt.rc_context(SVG_RC):
        fig, ax = plt.subplots(figsize=(8, 4.5))
        try:
            _draw(kind, series, ax)
            ax.set_title(kind.title)
            fig.tight_layout()
            with atomic_path(path) as tmp:
                fig.savefig(tmp, format="svg", metadata={"Date": None})
                write_frame(series, sidecar)
        finally:
            plt.close(fig)

    logger.info("Wrote %s and %s", path, sidecar)
    return sidecar
