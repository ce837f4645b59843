"""Masked means of a normal voting sample scored by its positive count.

A sample of `size` independent normal(mu, sigma) increments is reduced to
the count of its positive entries. mu_plus is the expected value of a
single entry multiplied by the indicator that the count strictly exceeds
`threshold`; mu_minus uses the complementary indicator, so the two always
recombine to mu. The exact forms sum over the binomial count distribution;
the *_approx forms replace that binomial with a continuity-corrected
normal and are the ones to reach for when p * q * size is comfortably
large (>= 9 as the usual guidance).

With p = cdf(mu/sigma), q = 1 - p, f = pdf(mu/sigma) and h = floor(threshold):

    mu_plus  = sum_{x=h+1..size} (mu + (sigma f / q) (x / (p size) - 1)) b(x)
    mu_minus = sum_{x=0..h}      (mu + (sigma f / q) (x / (p size) - 1)) b(x)

where b is the pmf of the positive count. The approximations standardize h
at z = (h + 0.5 - p size) / sqrt(p q size):

    mu_plus  ~ mu cdf(-z) + (sigma f / sqrt(p q size)) pdf(z)
    mu_minus ~ mu cdf(z)  - (sigma f / sqrt(p q size)) pdf(z)
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numerics import BinomialSpec, _pmf_block, std_normal_cdf, std_normal_pdf

__all__ = [
    "VotingSampleSpec",
    "mu_plus_exact",
    "mu_plus_approx",
    "mu_minus_exact",
    "mu_minus_approx",
]


@dataclass(frozen=True)
class VotingSampleSpec:
    """Entry distribution, sample size and the real-valued vote hurdle."""

    mu: float
    sigma: float
    size: int
    threshold: float

    def __post_init__(self) -> None:
        if self.size < 1:
            raise ValueError(f"size must be >= 1, got {self.size}")
        if self.sigma <= 0.0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")
        for name in ("mu", "threshold"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")


# Below this, a sign probability is treated as zero: the neglected binomial
# mass is < size * 1e-300 and the f/q, 1/p factors would overflow anyway.
_DEGENERATE_PROB = 1e-300


def _sign_stats(spec: VotingSampleSpec) -> tuple[float, float, float]:
    """(p, q, f): probability of a positive entry, its complement, and the
    standard normal density at the standardized mean. q is evaluated as its
    own tail, not 1 - p, so it keeps full precision when p rounds to 1."""
    z = spec.mu / spec.sigma
    return std_normal_cdf(z), std_normal_cdf(-z), std_normal_pdf(z)


def _masked_sum(spec: VotingSampleSpec, lo: int, hi: int) -> float:
    p, q, f = _sign_stats(spec)
    if p <= _DEGENERATE_PROB or q <= _DEGENERATE_PROB:
        # All mass sits on a single count; the correction factor vanishes
        # there, leaving the plain mean when that count is in range.
        point = 0 if p <= _DEGENERATE_PROB else spec.size
        return spec.mu if lo <= point <= hi else 0.0
    x = np.arange(lo, hi + 1)
    weights = _pmf_block(BinomialSpec(spec.size, p), lo, hi)
    terms = (spec.mu + spec.sigma * f / q * (x / (p * spec.size) - 1.0)) * weights
    return math.fsum(terms)


def mu_plus_exact(spec: VotingSampleSpec) -> float:
    """Expected entry value masked by the count clearing the hurdle.

    The summation range is clamped to x = max(0, floor(threshold)+1) .. size.
    A hurdle at or past size leaves nothing to sum (0.0); a hurdle below
    zero makes the mask certain and the sum collapses to mu.
    """
    lo = max(0, math.floor(spec.threshold) + 1)
    if lo > spec.size:
        return 0.0
    return _masked_sum(spec, lo, spec.size)


def mu_minus_exact(spec: VotingSampleSpec) -> float:
    """Complementary masked mean, summed over x = 0 .. floor(threshold).

    Deliberately an independent summation rather than mu - mu_plus_exact,
    so the partition identity stays an honest cross check.
    """
    hi = min(spec.size, math.floor(spec.threshold))
    if hi < 0:
        return 0.0
    return _masked_sum(spec, 0, hi)


def _standardized_hurdle(spec: VotingSampleSpec) -> tuple[float, float, float]:
    p, q, f = _sign_stats(spec)
    spread = math.sqrt(p * q * spec.size)
    if spread == 0.0:
        raise ValueError(
            f"p*q*size underflows for mu={spec.mu}, sigma={spec.sigma}; approximation undefined"
        )
    z = (math.floor(spec.threshold) + 0.5 - p * spec.size) / spread
    return z, spread, f


def mu_plus_approx(spec: VotingSampleSpec) -> float:
    """Normal-approximation counterpart of mu_plus_exact."""
    z, spread, f = _standardized_hurdle(spec)
    return spec.mu * std_normal_cdf(-z) + spec.sigma * f / spread * std_normal_pdf(z)


def mu_minus_approx(spec: VotingSampleSpec) -> float:
    """Normal-approximation counterpart of mu_minus_exact."""
    z, spread, f = _standardized_hurdle(spec)
    return spec.mu * std_normal_cdf(z) - spec.sigma * f / spread * std_normal_pdf(z)
