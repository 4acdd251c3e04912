"""

Bernoulli bandit simulation over problems. Thompson sampling is the main
strategy; epsilon-greedy and UCB are baselines.

"""

from concurrent.futures import ProcessPoolExecutor
from functools import partial
from typing import Callable, Dict, List, Optional, Tuple
import logging
import math

import numpy as np
from numpy.random import Generator

from .exceptions import InputError
from .models import (
    AgentState,
    ArmProbabilities,
    BanditEnvironment,
    RunTrace,
    SimulationConfig,
    SimulationTrace,
    Strategy,
)
from .utility import stream

logger = logging.getLogger(__name__)

__all__ = [
    "build_environment",
    "thompson_step",
    "baseline_step_epsilon_greedy",
    "baseline_step_ucb",
    "simulate_run",
    "run_simulation",
    "cumulative_regret",
    "cumulative_regret_per_run",
]

Step = Tuple[int, int, AgentState]
StepFunction = Callable[
    [AgentState, BanditEnvironment, Generator, Optional[SimulationConfig]], Step
]


def build_environment(probs: ArmProbabilities) -> BanditEnvironment:
    """
    One arm per problem, in input order, hiding the problem's probability.
    """

    if len(probs) < 2:
        raise InputError(f"An environment needs at least 2 arms, got {len(probs)}")

    return BanditEnvironment(probs.entries)


def _check_dimensions(state: AgentState, env: BanditEnvironment) -> None:
    if state.num_arms != env.num_arms:
        raise InputError(
            f"Agent state has {state.num_arms} arm(s) but the environment has {env.num_arms}"
        )


def _pull(env: BanditEnvironment, arm: int, rng: Generator) -> int:
    return int(rng.random() < env.means[arm])


def thompson_step(
    state: AgentState,
    env: BanditEnvironment,
    rng: Generator,
    config: Optional[SimulationConfig] = None,
) -> Step:
    """
    Sample every arm's Beta posterior, pull the highest sample (lowest index on ties) and record the reward.
    The state is updated in place and returned.
    """

    _check_dimensions(state, env)

    samples = rng.beta(state.alpha, state.beta)
    arm = int(np.argmax(samples))
    reward = _pull(env, arm, rng)
    state.update(arm, reward)
    return arm, reward, state


def baseline_step_epsilon_greedy(
    state: AgentState,
    env: BanditEnvironment,
    rng: Generator,
    config: Optional[SimulationConfig] = None,
) -> Step:
    """
    With probability epsilon pull a uniformly random arm, otherwise the best empirical mean (lowest index on ties).
    """

    _check_dimensions(state, env)
    epsilon = config.epsilon if config is not None else 0.1

    if epsilon > 0 and rng.random() < epsilon:
        arm = int(rng.integers(state.num_arms))
    else:
        arm = int(np.argmax(state.empirical_means))

    reward = _pull(env, arm, rng)
    state.update(arm, reward)
    return arm, reward, state


def baseline_step_ucb(
    state: AgentState,
    env: BanditEnvironment,
    rng: Generator,
    config: Optional[SimulationConfig] = None,
) -> Step:
    """
    Pull every arm once, then the arm maximizing `mean + c * sqrt(2 ln t / n)`.
    """

    _check_dimensions(state, env)
    ucb_c = config.ucb_c if config is not None else 1.0

    unpulled = np.flatnonzero(state.counts == 0)
    if len(unpulled):
        arm = int(unpulled[0])
    else:
        bonus = ucb_c * np.sqrt(2.0 * math.log(state.t) / state.counts)
        arm = int(np.argmax(state.empirical_means + bonus))

    reward = _pull(env, arm, rng)
    state.update(arm, reward)
    return arm, reward, state


STEP_FUNCTIONS: Dict[Strategy, StepFunction] = {
    Strategy.THOMPSON: thompson_step,
    Strategy.EPSILON_GREEDY: baseline_step_epsilon_greedy,
    Strategy.UCB: baseline_step_ucb,
}


def simulate_run(env: BanditEnvironment, config: SimulationConfig, run: int) -> RunTrace:
    """
    One run of `config.steps` pulls on substream `run` of the seed.
    """

    rng = stream(config.seed, run)
    step = STEP_FUNCTIONS[config.strategy]
    state = AgentState(env.num_arms)

    arms = np.empty(config.steps, dtype=np.int64)
    rewards = np.empty(config.steps, dtype=np.int64)
    for t in range(config.steps):
        arms[t], rewards[t], state = step(state, env, rng, config)

    if config.strategy is Strategy.THOMPSON:
        estimates = state.posterior_means
    else:
        estimates = state.empirical_means

    logger.debug("Run %d finished: %d pull(s), reward %d", run, config.steps, rewards.sum())
    return RunTrace(run, env.num_arms, arms, rewards, estimates)


def run_simulation(env: BanditEnvironment, config: SimulationConfig) -> SimulationTrace:
    """
    Every run of the config, reduced in run order. The output only depends on the environment and the config.
    """

    simulate = partial(simulate_run, env, config)

    runs: List[RunTrace]
    if config.workers > 1 and config.runs > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as executor:
            runs = list(executor.map(simulate, range(config.runs)))
    else:
        runs = [simulate(run) for run in range(config.runs)]

    trace = SimulationTrace(env.problem_ids, runs, config.strategy)
    logger.info(
        "Simulated %d run(s) x %d step(s) with %s; final average reward %.4f",
        config.runs,
        config.steps,
        config.strategy,
        trace.average_reward[-1],
    )
    return trace


def _check_trace(trace: SimulationTrace, env: BanditEnvironment) -> None:
    if trace.num_arms != env.num_arms:
        raise InputError(
            f"Trace has {trace.num_arms} arm(s) but the environment has {env.num_arms}"
        )
    if trace.problem_ids != env.problem_ids:
        raise InputError("Trace and environment list different problems")


def cumulative_regret_per_run(trace: SimulationTrace, env: BanditEnvironment) -> np.ndarray:
    """
    Expected regret `T * best_mean - sum of chosen means` after every step, shape `(runs, steps)`.
    """

    _check_trace(trace, env)
    gaps = env.optimal_mean - env.means
    return np.stack([np.cumsum(gaps[run.arms]) for run in trace.runs])


def cumulative_regret(trace: SimulationTrace, env: BanditEnvironment) -> np.ndarray:
    """
    Expected regret after every step, averaged over runs.
    """

    return cumulative_regret_per_run(trace, env).mean(axis=0)
