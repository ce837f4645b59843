"""Capital dynamics of threshold voting in a random environment.

A committee of n participants votes on stochastic proposals. Egoists vote
for whatever benefits them; a bloc of group members votes together under
one of several principles. This package computes the expected capital
increment of each role exactly, by normal approximation, and by Monte
Carlo, swept over the decision threshold alpha.
"""

from .expectations import (
    EvalMode,
    ModelParams,
    NORMAL_APPROX_MIN_PQN,
    Principle,
    SweepPoint,
    alpha_prime,
    expected_egoist_increment,
    expected_group_increment,
    group_support_probability,
    sweep,
)
from .numerics import (
    BinomialSpec,
    binomial_pmf,
    binomial_tail_above,
    binomial_tail_beta_identity,
    binomial_tail_normal_approx,
    std_normal_cdf,
    std_normal_pdf,
    truncated_normal_mean_above,
)
from .simulator import (
    SimConfig,
    SimState,
    TrajectoryStats,
    run,
    simulate_step,
    simulate_trajectory,
)
from .voting_sample import (
    VotingSampleSpec,
    mu_minus_approx,
    mu_minus_exact,
    mu_plus_approx,
    mu_plus_exact,
)

__version__ = "0.1.0"

__all__ = [
    "BinomialSpec",
    "EvalMode",
    "ModelParams",
    "NORMAL_APPROX_MIN_PQN",
    "Principle",
    "SimConfig",
    "SimState",
    "SweepPoint",
    "TrajectoryStats",
    "VotingSampleSpec",
    "alpha_prime",
    "binomial_pmf",
    "binomial_tail_above",
    "binomial_tail_beta_identity",
    "binomial_tail_normal_approx",
    "expected_egoist_increment",
    "expected_group_increment",
    "group_support_probability",
    "mu_minus_approx",
    "mu_minus_exact",
    "mu_plus_approx",
    "mu_plus_exact",
    "run",
    "simulate_step",
    "simulate_trajectory",
    "std_normal_cdf",
    "std_normal_pdf",
    "sweep",
    "truncated_normal_mean_above",
]
