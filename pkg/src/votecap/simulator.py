"""Monte Carlo counterpart of the analytic expectations.

Each replication plays `steps` proposals: draw one normal(mu, sigma)
increment per participant, collect egoist votes (strictly positive draw)
and the bloc's votes per its principle, accept when the total strictly
exceeds alpha * n, and add the drawn increments to the capitals of an
accepted proposal. Capital starts at zero, so the reported means are the
estimators of the expected s-step totals.

Reproducibility contract: replications are processed in fixed batches of
_BATCH rows. Batch b draws from a fresh PCG64 generator seeded with
SeedSequence((seed, b)); replication r occupies row r % _BATCH of batch
r // _BATCH, and each step draws the batch's (rows, n) block in one call.
The layout depends only on (config, seed), never on processing order, and
variates come from Generator.normal (numpy's ziggurat sampler), so runs
are bit-for-bit reproducible on a given numpy build and batches could be
farmed out concurrently and merged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .expectations import ModelParams, Principle

__all__ = ["SimConfig", "SimState", "TrajectoryStats", "simulate_step", "simulate_trajectory", "run"]

_BATCH = 8192


@dataclass(frozen=True)
class SimConfig:
    params: ModelParams
    principle: Principle
    steps: int
    replications: int
    seed: int

    def __post_init__(self) -> None:
        if self.steps < 1:
            raise ValueError(f"steps must be >= 1, got {self.steps}")
        if self.replications < 1:
            raise ValueError(f"replications must be >= 1, got {self.replications}")
        if self.seed < 0:
            raise ValueError(f"seed must be >= 0, got {self.seed}")


@dataclass
class SimState:
    """Per-member average capital of each role along one trajectory."""

    egoist_capital: float = 0.0
    group_capital: float = 0.0
    steps_taken: int = 0
    accepted: int = 0


@dataclass(frozen=True)
class TrajectoryStats:
    """Run summary: per-role mean total increments with 95% half-widths.

    Means average within each replication first (over the role's members),
    then across replications; half-widths are 1.96 * std / sqrt(R) over the
    replication means. A role with no members reports NaN means. Capitals
    start at zero, so final_capital_means repeats the mean increments.
    """

    mean_egoist_increment: float
    egoist_half_width: float
    mean_group_increment: float
    group_half_width: float
    acceptance_rate: float
    final_capital_means: dict[str, float] = field(repr=False)


def _batch_rng(seed: int, batch: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence((seed, batch))))


def _tally(draws: np.ndarray, params: ModelParams, principle: Principle) -> np.ndarray:
    """Acceptance flags for a (rows, n) block of proposal draws.

    Exact floating zeros count as non-positive everywhere: such a draw is
    an egoist vote against and not a positive bloc member.
    """
    ell = params.egoists
    votes = (draws[:, :ell] > 0.0).sum(axis=1)
    g = params.group
    if g:
        bloc = draws[:, ell:]
        if principle is Principle.B:
            support = bloc.sum(axis=1) > 0.0
        else:
            hurdle = math.floor(principle.count_threshold(params))
            support = (bloc > 0.0).sum(axis=1) >= hurdle + 1
        votes = votes + g * support
    return votes >= params.alpha_vote_floor + 1


def simulate_step(
    state: SimState,
    params: ModelParams,
    principle: Principle,
    rng: np.random.Generator,
) -> tuple[bool, tuple[float, float]]:
    """Play a single proposal, mutating `state` in place.

    Returns the acceptance flag and the per-member (egoist, group) capital
    increments that were applied, in the same units as run(); a rejected
    proposal applies exact zeros. A missing role contributes 0.0 and its
    capital simply stays put.
    """
    ell = params.egoists
    draws = rng.normal(params.mu, params.sigma, size=(1, params.n))
    accepted = bool(_tally(draws, params, principle)[0])
    if accepted:
        applied = (
            float(draws[0, :ell].mean()) if ell else 0.0,
            float(draws[0, ell:].mean()) if params.group else 0.0,
        )
        state.egoist_capital += applied[0]
        state.group_capital += applied[1]
        state.accepted += 1
    else:
        applied = (0.0, 0.0)
    state.steps_taken += 1
    return accepted, applied


def simulate_trajectory(config: SimConfig) -> np.ndarray:
    """Full per-participant capital paths for a single replication.

    Returns an array of shape (steps + 1, n); row 0 is the all-zero start.
    Uses the batch-0 stream, so with replications=1 the final row's
    per-role means match run() exactly.
    """
    params = config.params
    rng = _batch_rng(config.seed, 0)
    capitals = np.zeros((config.steps + 1, params.n))
    for t in range(1, config.steps + 1):
        draws = rng.normal(params.mu, params.sigma, size=(1, params.n))
        if _tally(draws, params, config.principle)[0]:
            capitals[t] = capitals[t - 1] + draws[0]
        else:
            capitals[t] = capitals[t - 1]
    return capitals


def _mean_and_half_width(per_replication: np.ndarray) -> tuple[float, float]:
    mean = float(per_replication.mean())
    count = per_replication.size
    if count > 1 and math.isfinite(mean):
        half = 1.96 * float(per_replication.std(ddof=1)) / math.sqrt(count)
    else:
        half = 0.0
    return mean, half


def run(config: SimConfig) -> TrajectoryStats:
    """Run the full batched experiment described by `config`."""
    params, principle = config.params, config.principle
    reps, steps = config.replications, config.steps
    ell, g, n = params.egoists, params.group, params.n
    egoist_means = np.empty(reps)
    group_means = np.empty(reps)
    accepted = 0
    for start in range(0, reps, _BATCH):
        rows = min(_BATCH, reps - start)
        rng = _batch_rng(config.seed, start // _BATCH)
        egoist_sums = np.zeros(rows)
        group_sums = np.zeros(rows)
        for _ in range(steps):
            draws = rng.normal(params.mu, params.sigma, size=(rows, n))
            acc = _tally(draws, params, principle)
            if ell:
                egoist_sums += np.where(acc, draws[:, :ell].sum(axis=1), 0.0)
            if g:
                group_sums += np.where(acc, draws[:, ell:].sum(axis=1), 0.0)
            accepted += int(acc.sum())
        egoist_means[start : start + rows] = egoist_sums / ell if ell else math.nan
        group_means[start : start + rows] = group_sums / g if g else math.nan
    egoist_mean, egoist_half = _mean_and_half_width(egoist_means)
    group_mean, group_half = _mean_and_half_width(group_means)
    return TrajectoryStats(
        mean_egoist_increment=egoist_mean,
        egoist_half_width=egoist_half,
        mean_group_increment=group_mean,
        group_half_width=group_half,
        acceptance_rate=accepted / (reps * steps),
        final_capital_means={"egoist": egoist_mean, "group": group_mean},
    )
