"""

apme
~~~~~~~~~~~~~~~~~~~

Adaptive problem-difficulty estimation from marks and time, validated with a multi-armed bandit simulation.

License: MIT

"""

# pyright: reportUnusedImport=false

from apme import exceptions
from apme.models import *

from apme.metrics import (
    instantaneous_performance,
    derived_performance,
    aggregate_problem,
    modulated_return,
    shift_marks,
    min_max_normalize,
    assign_probabilities,
    confidence_within,
)
from apme.bandit import (
    build_environment,
    thompson_step,
    baseline_step_epsilon_greedy,
    baseline_step_ucb,
    simulate_run,
    run_simulation,
    cumulative_regret,
    cumulative_regret_per_run,
)
from apme.evaluation import (
    r_squared,
    rmse,
    spearman_rank_correlation,
    evaluate_estimates,
    rank_problems,
    highlights,
    brute_force_psi,
    generate_synthetic,
)
