import json
from pathlib import Path
from typing import List

import pandas as pd
import pytest

from apme.cli import main


def run_pipeline(skyben_csv: Path, folder: Path) -> List[Path]:
    folder.mkdir()
    records = folder / "records.csv"
    stats = folder / "stats.csv"
    sim = folder / "sim"

    assert main(["ingest", str(skyben_csv), "--schema", "skyben", "-o", str(records)]) == 0
    assert main(["stats", str(records), "-o", str(stats)]) == 0
    assert main(
        [
            "simulate", str(stats), "-o", str(sim),
            "--strategy", "thompson", "--steps", "400", "--runs", "5", "--seed", "42",
        ]
    ) == 0
    assert main(
        ["evaluate", str(sim / "estimates.json"), str(stats), "-o", str(folder / "report.json")]
    ) == 0
    assert main(["rank", str(stats), "-o", str(folder / "ranking.csv")]) == 0
    assert main(["plot", str(sim / "trace.csv"), "--kind", "avg-reward", "-o", str(folder / "avg.svg")]) == 0
    assert main(["plot", str(sim / "curves.csv"), "--kind", "selections", "-o", str(folder / "sel.svg")]) == 0
    assert main(["plot", str(records), "--kind", "marks-hist", "-o", str(folder / "marks.svg")]) == 0
    assert main(["plot", str(sim / "regret.csv"), "--kind", "regret", "-o", str(folder / "regret.svg")]) == 0

    return sorted(p for p in folder.rglob("*") if p.is_file())


def test_pipeline_is_deterministic(tmp_path: Path, skyben_csv: Path):
    first = run_pipeline(skyben_csv, tmp_path / "first")
    second = run_pipeline(skyben_csv, tmp_path / "second")

    names = [p.relative_to(tmp_path / "first") for p in first]
    assert names == [p.relative_to(tmp_path / "second") for p in second]
    assert len(names) == 16

    for a, b in zip(first, second):
        assert a.read_bytes() == b.read_bytes(), a.name


def test_pipeline_outputs(tmp_path: Path, skyben_csv: Path):
    run_pipeline(skyben_csv, tmp_path / "out")
    folder = tmp_path / "out"

    stats = pd.read_csv(folder / "stats.csv")
    assert len(stats) == 10
    assert list(stats.columns) == [
        "problem_id", "k", "mean_eta", "std_eta", "psi", "probability", "degenerate",
    ]
    assert stats["probability"].sum() == pytest.approx(1.0)

    report = json.loads((folder / "report.json").read_text(encoding="utf-8"))
    assert report["evaluated_against"] == "hidden_probability"
    assert len(report["per_arm"]) == 10

    trace = pd.read_csv(folder / "sim" / "trace.csv")
    assert list(trace.columns) == ["step", "run", "arm", "reward"]
    assert len(trace) == 400 * 5

    ranking = pd.read_csv(folder / "ranking.csv")
    assert list(ranking["rank"]) == list(range(1, 11))


def test_ingest_prints_report(tmp_path: Path, skyben_csv: Path, capsys):
    assert main(["ingest", str(skyben_csv), "--schema", "SKYBEN", "-o", str(tmp_path / "r.csv")]) == 0

    report = json.loads(capsys.readouterr().out)
    assert report["rows_read"] == 400
    assert report["rows_dropped_invalid"] == 0
    assert report["problems_retained"] == 10


def test_ingest_jee(tmp_path: Path):
    counts = tmp_path / "jee.csv"
    counts.write_text(
        "question_id,correct,incorrect,unattempted,scheme\n"
        "Q1,3,2,1,plus3_minus1\n"
        "Q2,2,2,2,plus4_zero\n",
        encoding="utf-8",
    )
    output = tmp_path / "records.csv"

    assert main(["ingest", str(counts), "--schema", "jee", "--nominal-time-ms", "600000", "-o", str(output)]) == 0

    records = pd.read_csv(output)
    assert len(records) == 12
    assert set(records["milsec"]) == {600000}
    assert records["marks"].min() == 0


def test_missing_column_writes_nothing(tmp_path: Path):
    source = tmp_path / "bad.csv"
    source.write_text("problem_id,marks\nQ1,1\n", encoding="utf-8")
    output = tmp_path / "records.csv"

    assert main(["ingest", str(source), "-o", str(output)]) == 1
    assert not output.exists()


def test_missing_file_is_io_error(tmp_path: Path):
    assert main(["ingest", str(tmp_path / "nope.csv"), "-o", str(tmp_path / "out.csv")]) == 2
    assert main(["stats", str(tmp_path / "nope.csv"), "-o", str(tmp_path / "out.csv")]) == 2


def test_usage_errors(tmp_path: Path):
    assert main([]) == 1
    assert main(["ingest", "x.csv", "-o", "y.csv", "--schema", "moodle"]) == 1
    assert main(["simulate", "stats.csv", "-o", str(tmp_path), "--steps", "many"]) == 1


def test_stats_needs_two_responses(tmp_path: Path):
    records = tmp_path / "records.csv"
    records.write_text("problem_id,milsec,marks\nQ1,1000,1\nQ2,2000,1\n", encoding="utf-8")
    output = tmp_path / "stats.csv"

    assert main(["stats", str(records), "-o", str(output)]) == 1
    assert not output.exists()


def test_stats_flags_degenerate(tmp_path: Path):
    records = tmp_path / "records.csv"
    records.write_text(
        "problem_id,milsec,marks\n"
        "Q1,1000,1\nQ1,1000,1\n"
        "Q2,1000,1\nQ2,3000,1\n"
        "Q3,5000,1\n",
        encoding="utf-8",
    )
    output = tmp_path / "stats.csv"

    assert main(["stats", str(records), "-o", str(output)]) == 0

    stats = pd.read_csv(output, dtype=str)
    assert list(stats["problem_id"]) == ["Q1", "Q2"]
    assert list(stats["degenerate"]) == ["true", "false"]


def test_stats_scheme_precedence(tmp_path: Path):
    records = tmp_path / "records.csv"
    records.write_text("problem_id,milsec,marks\nQ1,1000,1\nQ1,2000,1\nQ2,1000,1\nQ2,4000,1\n", encoding="utf-8")
    scheme = tmp_path / "scheme.json"
    scheme.write_text(json.dumps({"alpha": 2, "epsilon_smooth": 0}), encoding="utf-8")

    assert main(["stats", str(records), "--scheme", str(scheme), "--alpha", "3", "-o", str(tmp_path / "s.csv")]) == 0

    stats = pd.read_csv(tmp_path / "s.csv")
    # alpha 3 from the flag: performance 3.0 and 1.5 per second
    assert stats["mean_eta"][0] == pytest.approx(2.25)
    assert stats["psi"][0] == pytest.approx(2.25 / (1.5 / 2**0.5))

    scheme.write_text(json.dumps({"alpha": 2, "gamma": 1}), encoding="utf-8")
    assert main(["stats", str(records), "--scheme", str(scheme), "-o", str(tmp_path / "t.csv")]) == 1


def test_simulate_validation(tmp_path: Path, skyben_csv: Path):
    stats = tmp_path / "stats.csv"
    assert main(["ingest", str(skyben_csv), "-o", str(tmp_path / "r.csv")]) == 0
    assert main(["stats", str(tmp_path / "r.csv"), "-o", str(stats)]) == 0

    out = tmp_path / "sim"
    assert main(["simulate", str(stats), "-o", str(out), "--steps", "0"]) == 1
    assert main(["simulate", str(stats), "-o", str(out), "--strategy", "softmax"]) == 1
    assert main(["simulate", str(stats), "-o", str(out), "--runs", "2", "--experiments", "10"]) == 1
    assert not out.exists()


def test_simulate_seed_from_environment(tmp_path: Path, skyben_csv: Path, monkeypatch):
    stats = tmp_path / "stats.csv"
    assert main(["ingest", str(skyben_csv), "-o", str(tmp_path / "r.csv")]) == 0
    assert main(["stats", str(tmp_path / "r.csv"), "-o", str(stats)]) == 0

    monkeypatch.setenv("APME_SEED", "42")
    assert main(["simulate", str(stats), "-o", str(tmp_path / "env"), "--steps", "50"]) == 0
    monkeypatch.delenv("APME_SEED")
    assert main(["simulate", str(stats), "-o", str(tmp_path / "flag"), "--steps", "50", "--seed", "42"]) == 0

    for name in ("trace.csv", "estimates.json"):
        assert (tmp_path / "env" / name).read_bytes() == (tmp_path / "flag" / name).read_bytes()


def test_evaluate_mismatch(tmp_path: Path):
    stats = tmp_path / "stats.csv"
    stats.write_text(
        "problem_id,k,mean_eta,std_eta,psi,probability,degenerate\n"
        "Q1,4,1.0,0.5,2.0,0.4,false\n"
        "Q2,4,1.5,0.5,3.0,0.6,false\n",
        encoding="utf-8",
    )
    estimates = tmp_path / "estimates.json"
    estimates.write_text(json.dumps({"Q1": {"estimate": 0.4}, "Q3": {"estimate": 0.6}}), encoding="utf-8")
    output = tmp_path / "report.json"

    assert main(["evaluate", str(estimates), str(stats), "-o", str(output)]) == 1
    assert not output.exists()


def test_plot_unknown_kind(tmp_path: Path):
    assert main(["plot", "trace.csv", "--kind", "pie", "-o", str(tmp_path / "p.svg")]) == 1


def test_summary(tmp_path: Path, skyben_csv: Path, capsys):
    records = tmp_path / "r.csv"
    assert main(["ingest", str(skyben_csv), "-o", str(records)]) == 0
    capsys.readouterr()

    assert main(["summary", str(records)]) == 0
    summary = json.loads(capsys.readouterr().out)

    assert summary["trials"] == 400
    assert summary["problems"] == 10
    assert summary["success_mark"] == 5.0
    assert 0 < summary["success_rate"] < 1


def test_ingest_drops_oversized_times(tmp_path: Path, capsys):
    source = tmp_path / "records.csv"
    source.write_text("problem_id,milsec,marks\nQ1,99999999999999999999,1\nQ1,1000,1\n", encoding="utf-8")

    assert main(["ingest", str(source), "-o", str(tmp_path / "out.csv")]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["rows_dropped_invalid"] == 1


def test_plot_empty_trace(tmp_path: Path):
    trace = tmp_path / "trace.csv"
    trace.write_text("step,run,arm,reward\n", encoding="utf-8")
    output = tmp_path / "sel.svg"

    assert main(["plot", str(trace), "--kind", "selections", "-o", str(output)]) == 1
    assert not output.exists()


def test_rank_highlights(tmp_path: Path, skyben_csv: Path, capsys):
    records = tmp_path / "records.csv"
    stats = tmp_path / "stats.csv"
    assert main(["ingest", str(skyben_csv), "--schema", "skyben", "-o", str(records)]) == 0
    assert main(["stats", str(records), "-o", str(stats)]) == 0
    capsys.readouterr()

    ranking = tmp_path / "ranking.csv"
    assert main(["rank", str(stats), "-o", str(ranking), "--highlights", "2", "--scale", "100"]) == 0
    document = json.loads(capsys.readouterr().out)

    assert [r["rank"] for r in document["easiest"]] == [1, 2]
    assert [r["rank"] for r in document["hardest"]] == [9, 10]
    assert document["easiest"][0]["normalized_psi"] == pytest.approx(100.0)
    assert document["hardest"][-1]["normalized_psi"] == pytest.approx(0.0)
    assert document["easiest"][0]["problem_id"] == pd.read_csv(ranking)["problem_id"][0]

    assert main(["rank", str(stats), "-o", str(tmp_path / "r2.csv"), "--highlights", "0"]) == 1
    assert not (tmp_path / "r2.csv").exists()


def test_plot_kind_by_title(tmp_path: Path, skyben_csv: Path):
    records = tmp_path / "records.csv"
    assert main(["ingest", str(skyben_csv), "-o", str(records)]) == 0

    output = tmp_path / "marks.svg"
    assert main(["plot", str(records), "--kind", "Distribution of marks", "-o", str(output)]) == 0
    assert output.exists()
