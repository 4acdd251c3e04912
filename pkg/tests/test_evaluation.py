import math

import numpy as np
import pytest

from apme import (
    MarkingScheme,
    ResponseRecord,
    SimulationConfig,
    SyntheticSpec,
    assign_probabilities,
    build_environment,
    cumulative_regret,
    evaluate_estimates,
    generate_synthetic,
    highlights,
    r_squared,
    rank_problems,
    rmse,
    run_simulation,
    spearman_rank_correlation,
)
from apme.evaluation import aggregate_records, normalized_psi, success_ratios, summarize_dataset
from apme.exceptions import InputError, ProblemSetMismatch, ZeroVariance

from conftest import stats_for


RECOVERY_TARGETS = [10, 8, 6, 5, 4, 3, 2.5, 2, 1.5, 1]


@pytest.fixture(scope="module")
def recovery():
    records, stats = generate_synthetic(SyntheticSpec(RECOVERY_TARGETS, seed=42))
    hidden = assign_probabilities(stats)
    env = build_environment(hidden)
    trace = run_simulation(env, SimulationConfig("thompson", steps=5000, runs=200, seed=42))
    return stats, hidden, env, trace


def test_r_squared_and_rmse():
    assert r_squared([1, 2, 3], [1, 2, 3]) == 1.0
    assert rmse([1, 2, 3], [1, 2, 3]) == 0.0

    assert r_squared([1, 2, 3], [1, 2, 4]) == pytest.approx(0.5)
    assert rmse([1, 2, 3], [1, 2, 4]) == pytest.approx(math.sqrt(1 / 3))


def test_r_squared_and_rmse_invariances():
    rng = np.random.default_rng(17)

    for _ in range(50):
        actual = rng.uniform(0.0, 1.0, size=8)
        predicted = actual + rng.normal(0.0, 0.1, size=8)
        shift = rng.uniform(-100.0, 100.0)
        factor = rng.uniform(-5.0, 5.0)

        assert r_squared(actual + shift, predicted + shift) == pytest.approx(
            r_squared(actual, predicted), abs=1e-9
        )
        assert rmse(factor * actual, factor * predicted) == pytest.approx(
            abs(factor) * rmse(actual, predicted), rel=1e-9
        )


def test_r_squared_errors():
    with pytest.raises(ZeroVariance):
        r_squared([0.5, 0.5], [0.4, 0.6])
    with pytest.raises(InputError):
        r_squared([0.5], [0.5])
    with pytest.raises(InputError):
        rmse([0.1, 0.2], [0.1])


def test_spearman():
    assert spearman_rank_correlation([1, 2, 3, 4], [10, 20, 30, 40]) == pytest.approx(1.0)
    assert spearman_rank_correlation([1, 2, 3, 4], [4, 3, 2, 1]) == pytest.approx(-1.0)
    assert math.isnan(spearman_rank_correlation([1, 2, 3], [5, 5, 5]))


def test_evaluate_estimates():
    hidden = assign_probabilities(stats_for([1.0, 2.0, 5.0]))
    report = evaluate_estimates(hidden, dict(hidden.entries))

    assert report.r_squared == 1.0
    assert report.rmse == 0.0
    assert [a.problem_id for a in report.per_arm] == ["P00", "P01", "P02"]

    document = report.to_document()
    assert document["evaluated_against"] == "hidden_probability"
    assert document["spearman"] == pytest.approx(1.0)


def test_evaluate_mismatch():
    hidden = assign_probabilities(stats_for([1.0, 2.0, 5.0]))

    with pytest.raises(ProblemSetMismatch) as info:
        evaluate_estimates(hidden, {"P00": 0.1, "P01": 0.2, "P09": 0.7})
    assert info.value.difference == ["P02", "P09"]
    assert info.value.exit_code == 1


def test_ranking_reference_moments(table_moment_records):
    stats = aggregate_records(table_moment_records, MarkingScheme.timss(epsilon_smooth=0.0))
    ranking = rank_problems(stats)

    assert ranking.problem_ids == ["A", "C", "H", "J"]
    assert [r.rank for r in ranking] == [1, 2, 3, 4]

    top, bottom = highlights(ranking)
    assert top.problem_ids == ["A", "C"]
    assert bottom.problem_ids == ["H", "J"]

    scaled = normalized_psi(ranking, scale=10)
    assert scaled["A"] == pytest.approx(10.0)
    assert scaled["J"] == 0.0


def test_ranking_ties_and_errors():
    stats = stats_for([2.0, 3.0, 2.0])
    assert rank_problems(stats).problem_ids == ["P01", "P00", "P02"]

    with pytest.raises(InputError):
        rank_problems([])
    with pytest.raises(InputError):
        highlights(rank_problems(stats), count=0)


def test_synthetic_hits_targets():
    records, stats = generate_synthetic(SyntheticSpec([4.0, 2.0, 1.0], records_per_problem=100, seed=9))

    assert len(records) == 300
    assert stats.problem_ids == ["P01", "P02", "P03"]
    for s, target in zip(stats, [4.0, 2.0, 1.0]):
        assert abs(s.psi - target) <= 0.02 * target

    again, _ = generate_synthetic(SyntheticSpec([4.0, 2.0, 1.0], records_per_problem=100, seed=9))
    assert again == records


def test_synthetic_equal_targets_are_near_uniform():
    for seed in range(5):
        _, stats = generate_synthetic(SyntheticSpec([3.0] * 4, records_per_problem=100, seed=seed))
        probabilities = assign_probabilities(stats).probabilities

        assert probabilities == pytest.approx([0.25] * 4, abs=0.02)


def test_synthetic_spec_validation():
    with pytest.raises(InputError):
        SyntheticSpec([1.0])
    with pytest.raises(InputError):
        SyntheticSpec([1.0, -2.0])
    with pytest.raises(InputError):
        SyntheticSpec([1.0, 2.0], records_per_problem=1)


def test_success_summary():
    records = [
        ResponseRecord("A", 1000, 5),
        ResponseRecord("A", 1000, 0),
        ResponseRecord("B", 1000, 5),
        ResponseRecord("B", 1000, 5),
    ]

    assert success_ratios(records, 5) == {"A": 0.5, "B": 1.0}

    summary = summarize_dataset(records, 5)
    assert summary.trials == 4
    assert summary.problems == 2
    assert summary.success_rate == 0.75

    with pytest.raises(InputError):
        summarize_dataset([], 5)


def test_recovery_of_hidden_probabilities(recovery):
    stats, hidden, env, trace = recovery
    estimates = dict(zip(trace.problem_ids, trace.estimates))
    report = evaluate_estimates(hidden, estimates)

    assert report.r_squared >= 0.95
    assert report.rmse <= 0.02


def test_recovered_ranking_matches(recovery):
    stats, hidden, env, trace = recovery
    psi = [s.psi for s in stats]

    assert spearman_rank_correlation(psi, list(trace.estimates)) == pytest.approx(1.0)
    assert rank_problems(stats).problem_ids == [f"P{i:02d}" for i in range(1, 11)]


def test_regret_is_sublinear(recovery):
    stats, hidden, env, trace = recovery
    regret = cumulative_regret(trace, env)

    assert regret[4999] / 5000 < 0.5 * regret[499] / 500
    assert np.all(np.diff(regret) >= 0)


def test_average_reward_improves(recovery):
    stats, hidden, env, trace = recovery
    tenth = trace.steps // 10

    assert trace.average_reward[-tenth:].mean() >= trace.average_reward[:tenth].mean()
