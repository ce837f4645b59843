"""Expected one-step capital increments of egoists and group members.

A society of n participants decides on a proposal of independent
normal(mu, sigma) capital increments, one per participant. Every egoist
votes for the proposal exactly when their own increment is positive; the
remaining `group` members vote as a single bloc decided by a Principle.
The proposal passes when strictly more than alpha * n votes are for it.

With p the probability of a positive increment, the egoist votes form a
binomial count over the egoists. Acceptance therefore needs the egoists
to clear floor(alpha n) votes on their own, or floor(alpha n) - group
when the bloc joins in, and both expectations reduce to masked means of
the voting-sample kind. Everything is exposed in an exact flavor and a
normal-approximation flavor, with `auto` picking between them.
"""

from __future__ import annotations

import dataclasses
import enum
import math
from collections.abc import Iterable
from dataclasses import dataclass

from .numerics import (
    BinomialSpec,
    binomial_tail_above,
    binomial_tail_normal_approx,
    std_normal_cdf,
    std_normal_pdf,
)
from .voting_sample import VotingSampleSpec, mu_plus_approx, mu_plus_exact

__all__ = [
    "ModelParams",
    "Principle",
    "EvalMode",
    "SweepPoint",
    "alpha_prime",
    "group_support_probability",
    "expected_egoist_increment",
    "expected_group_increment",
    "sweep",
]

# Rule of thumb for when the corrected normal approximation of a binomial
# count is trustworthy; `auto` demands it of both the egoist and the group
# counts before switching away from exact summation.
NORMAL_APPROX_MIN_PQN = 9.0


@dataclass(frozen=True)
class ModelParams:
    """Society and environment parameters for one decision threshold.

    Attributes
    ----------
    n : total number of participants.
    egoists : how many of them vote their own increment's sign.
    mu, sigma : normal parameters of every capital increment.
    alpha : acceptance threshold; a proposal needs strictly more than
        alpha * n votes.
    """

    n: int
    egoists: int
    mu: float
    sigma: float
    alpha: float

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not 0 <= self.egoists <= self.n:
            raise ValueError(f"egoists must lie in [0, {self.n}], got {self.egoists}")
        if self.sigma <= 0.0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")
        if not math.isfinite(self.mu):
            raise ValueError(f"mu must be finite, got {self.mu!r}")
        if not 0.0 <= self.alpha < 1.0:
            raise ValueError(f"alpha must lie in [0, 1), got {self.alpha}")

    @classmethod
    def from_beta(cls, n: int, beta: float, mu: float, sigma: float, alpha: float) -> "ModelParams":
        """Build params from the egoist share beta = egoists / (2 n).

        The implied egoist count 2 beta n is rounded to the nearest integer;
        compare the realized `beta` property with the request if the
        distinction matters.
        """
        if not 0.0 <= beta <= 0.5:
            raise ValueError(f"beta must lie in [0, 0.5], got {beta}")
        return cls(n=n, egoists=round(2.0 * beta * n), mu=mu, sigma=sigma, alpha=alpha)

    @property
    def group(self) -> int:
        """Number of group members, n - egoists."""
        return self.n - self.egoists

    @property
    def beta(self) -> float:
        """Egoist share of the society, egoists / (2 n)."""
        return self.egoists / (2.0 * self.n)

    @property
    def gamma(self) -> float:
        """Effective egoist-vote threshold fraction once the bloc joins:
        alpha - (1 - 2 beta)."""
        return self.alpha - (1.0 - 2.0 * self.beta)

    @property
    def p(self) -> float:
        """Probability that a single increment is positive, cdf(mu / sigma)."""
        return std_normal_cdf(self.mu / self.sigma)

    @property
    def q(self) -> float:
        """Complement of p."""
        return std_normal_cdf(-self.mu / self.sigma)

    @property
    def f(self) -> float:
        """Standard normal density at mu / sigma."""
        return std_normal_pdf(self.mu / self.sigma)

    @property
    def alpha_vote_floor(self) -> int:
        """floor(alpha n): votes beyond this count pass the proposal."""
        return math.floor(self.alpha * self.n)

    @property
    def gamma_vote_floor(self) -> int:
        """floor(gamma n), computed as alpha_vote_floor - group.

        The subtraction form is an identity (the group size is an integer)
        and dodges the floating-point wobble of flooring gamma * n directly,
        which can land on the wrong side at exact breakpoints. It also pins
        down gamma_vote_floor <= alpha_vote_floor, so the probability of
        acceptance with the bloc's support can never drop below the
        probability without it.
        """
        return self.alpha_vote_floor - self.group


def alpha_prime(alpha: float, beta: float) -> float:
    """Internal bloc threshold fraction that adapts to the decision rule.

    Piecewise in alpha: alpha / (2 beta) below beta, one half on the middle
    band [beta, 1 - beta], and 1 - (1 - alpha) / (2 beta) above 1 - beta.
    Continuous, nondecreasing, and confined to [0, 1].
    """
    if not 0.0 < beta <= 0.5:
        raise ValueError(f"beta must lie in (0, 0.5], got {beta}")
    if not 0.0 <= alpha < 1.0:
        raise ValueError(f"alpha must lie in [0, 1), got {alpha}")
    if alpha < beta:
        return alpha / (2.0 * beta)
    if alpha > 1.0 - beta:
        return 1.0 - (1.0 - alpha) / (2.0 * beta)
    return 0.5


class Principle(enum.Enum):
    """How the group bloc decides which way to cast its votes.

    A casts for the proposal when strictly more than half the members draw
    a positive increment; B when the members' summed increment is positive;
    the primed variants replace A's half with alpha_prime(alpha, beta) and
    with alpha itself, respectively.
    """

    A = "A"
    B = "B"
    A_PRIME = "Aprime"
    A_DOUBLE_PRIME = "Adoubleprime"

    @classmethod
    def parse(cls, text: str) -> "Principle":
        key = text.strip().lower().replace("''", "doubleprime").replace("'", "prime")
        for member in cls:
            if member.value.lower() == key:
                return member
        raise ValueError(f"unknown principle {text!r}; choose from A, B, Aprime, Adoubleprime")

    @property
    def is_count_based(self) -> bool:
        return self is not Principle.B

    def count_threshold(self, params: ModelParams) -> float:
        """Real hurdle on the bloc's positive count; None-equivalent for B
        is not offered, callers must branch on is_count_based first."""
        if self is Principle.A:
            return params.group / 2.0
        if self is Principle.A_PRIME:
            return alpha_prime(params.alpha, params.beta) * params.group
        if self is Principle.A_DOUBLE_PRIME:
            return params.alpha * params.group
        raise ValueError("principle B has no count threshold")


class EvalMode(enum.Enum):
    """Exact binomial summation, normal approximation, or automatic choice."""

    EXACT = "exact"
    APPROX = "approx"
    AUTO = "auto"

    def resolve(self, params: ModelParams) -> "EvalMode":
        """AUTO becomes APPROX only when p q n clears the usual rule of
        thumb for both the egoist count and the group count."""
        if self is not EvalMode.AUTO:
            return self
        pq = params.p * params.q
        if pq * params.egoists >= NORMAL_APPROX_MIN_PQN and pq * params.group >= NORMAL_APPROX_MIN_PQN:
            return EvalMode.APPROX
        return EvalMode.EXACT


def group_support_probability(
    params: ModelParams, principle: Principle, *, approximate: bool = False
) -> float:
    """Probability that the bloc casts its votes for the proposal.

    B has the closed form cdf(mu sqrt(g) / sigma) used in every mode (the
    bloc's mean increment is normal with spread sigma / sqrt(g), no
    binomial involved, so `approximate` does not apply to it). The
    count-based principles take the binomial upper tail above their
    hurdle, or its corrected normal approximation when asked.
    """
    g = params.group
    if g < 1:
        raise ValueError("group support is undefined without group members")
    if principle is Principle.B:
        return std_normal_cdf(params.mu * math.sqrt(g) / params.sigma)
    hurdle = math.floor(principle.count_threshold(params))
    spec = BinomialSpec(g, params.p)
    if approximate:
        return binomial_tail_normal_approx(hurdle, spec)
    return binomial_tail_above(hurdle, spec)


def _acceptance_tails(params: ModelParams, mode: EvalMode) -> tuple[float, float]:
    """(P pass on egoist votes alone, P pass once the bloc joins).

    These are upper tails of the egoist vote count above alpha_vote_floor
    and gamma_vote_floor. With no egoists the tails are the trivial 0/1
    values regardless of mode, since there is no count to approximate.
    """
    spec = BinomialSpec(params.egoists, params.p)
    if mode is EvalMode.APPROX and params.egoists >= 1:
        return (
            binomial_tail_normal_approx(params.alpha_vote_floor, spec),
            binomial_tail_normal_approx(params.gamma_vote_floor, spec),
        )
    return (
        binomial_tail_above(params.alpha_vote_floor, spec),
        binomial_tail_above(params.gamma_vote_floor, spec),
    )


def expected_egoist_increment(
    params: ModelParams,
    principle: Principle,
    mode: EvalMode = EvalMode.EXACT,
    *,
    approx_group_support: bool = False,
) -> float:
    """Expected one-step capital increment of a single egoist.

    Weighs the masked voting-sample mean at the supported hurdle
    (gamma_vote_floor) by the bloc's support probability, and the one at
    the unsupported hurdle (alpha_vote_floor) by its complement. The
    support probability stays exact by default even in approx mode;
    opt in to its normal approximation with `approx_group_support`
    (count-based principles only).
    """
    if params.egoists < 1:
        raise ValueError("at least one egoist is required")
    resolved = mode.resolve(params)
    if params.group == 0:
        # No bloc to weigh in: both hurdles coincide and the support
        # probability drops out of the mixture entirely.
        support = 0.0
    else:
        use_approx_support = (
            approx_group_support and resolved is EvalMode.APPROX and principle.is_count_based
        )
        support = group_support_probability(params, principle, approximate=use_approx_support)
    masked = mu_plus_exact if resolved is EvalMode.EXACT else mu_plus_approx
    supported = masked(
        VotingSampleSpec(params.mu, params.sigma, params.egoists, float(params.gamma_vote_floor))
    )
    unsupported = masked(
        VotingSampleSpec(params.mu, params.sigma, params.egoists, float(params.alpha_vote_floor))
    )
    return supported * support + unsupported * (1.0 - support)


def _bloc_member_conditional_mean(params: ModelParams, principle: Principle, mode: EvalMode) -> float:
    """Expected member increment given the proposal needs and gets the
    bloc's support. For B this is the masked mean of the bloc's average
    increment (a single normal with spread sigma / sqrt(g)) above zero,
    with closed form mu cdf(w) + (sigma / sqrt(g)) pdf(w), w = mu sqrt(g) / sigma."""
    g = params.group
    if principle is Principle.B:
        if mode is EvalMode.EXACT:
            return mu_plus_exact(
                VotingSampleSpec(params.mu, params.sigma / math.sqrt(g), 1, 0.0)
            )
        w = params.mu * math.sqrt(g) / params.sigma
        return params.mu * std_normal_cdf(w) + params.sigma / math.sqrt(g) * std_normal_pdf(w)
    sample = VotingSampleSpec(params.mu, params.sigma, g, principle.count_threshold(params))
    return mu_plus_exact(sample) if mode is EvalMode.EXACT else mu_plus_approx(sample)


def expected_group_increment(
    params: ModelParams, principle: Principle, mode: EvalMode = EvalMode.EXACT
) -> float:
    """Expected one-step capital increment of a single group member.

    When the egoists pass the proposal on their own the member simply
    collects an unconditional draw (mean mu). The bloc only matters on the
    margin where its votes flip the outcome, which happens with
    probability (P pass with support) - (P pass alone); there the member
    collects the principle's conditional mean.
    """
    if params.group < 1:
        raise ValueError("group expectation requires at least one group member")
    resolved = mode.resolve(params)
    pass_alone, pass_supported = _acceptance_tails(params, resolved)
    inner = _bloc_member_conditional_mean(params, principle, resolved)
    return params.mu * pass_alone + inner * (pass_supported - pass_alone)


@dataclass(frozen=True)
class SweepPoint:
    """One decision threshold's worth of sweep output.

    Totals are the per-step means scaled by the experiment length, exactly.
    The two diagnostic probabilities are the acceptance tails: passage odds
    with the bloc's support and on egoist votes alone.
    """

    alpha: float
    egoist_step_mean: float
    group_step_mean: float
    egoist_total: float
    group_total: float
    p_accept_given_support: float
    p_accept_given_no_support: float


def sweep(
    params: ModelParams,
    principle: Principle,
    alpha_grid: Iterable[float],
    steps: int,
    mode: EvalMode = EvalMode.EXACT,
) -> list[SweepPoint]:
    """Evaluate both expectations over a grid of decision thresholds.

    The alpha field of `params` is ignored; each grid value is substituted
    in turn and the output order matches the grid order. Roles that do not
    exist (no egoists, or no group) get NaN means rather than zeros.
    """
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    grid = [float(a) for a in alpha_grid]
    if not grid:
        raise ValueError("alpha grid is empty")
    points = []
    for a in grid:
        at = dataclasses.replace(params, alpha=a)
        resolved = mode.resolve(at)
        egoist = expected_egoist_increment(at, principle, resolved) if at.egoists else math.nan
        group = expected_group_increment(at, principle, resolved) if at.group else math.nan
        pass_alone, pass_supported = _acceptance_tails(at, resolved)
        points.append(
            SweepPoint(
                alpha=a,
                egoist_step_mean=egoist,
                group_step_mean=group,
                egoist_total=steps * egoist,
                group_total=steps * group,
                p_accept_given_support=pass_supported,
                p_accept_given_no_support=pass_alone,
            )
        )
    return points
