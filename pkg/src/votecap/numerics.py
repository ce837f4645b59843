"""Scalar probability routines shared by the analytic and simulation layers.

Standard normal pdf/cdf, a log-space binomial pmf, binomial upper tails by
three routes (direct compensated summation, the regularized incomplete beta
identity, and the continuity-corrected normal approximation), and the mean
of a normal variable conditioned to exceed a threshold.

The summation route and the incomplete-beta route are kept fully independent
of each other on purpose: each one is the oracle for the other in the test
suite, so neither may be rewritten in terms of its twin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "BinomialSpec",
    "std_normal_pdf",
    "std_normal_cdf",
    "binomial_pmf",
    "binomial_tail_above",
    "binomial_tail_beta_identity",
    "binomial_tail_normal_approx",
    "truncated_normal_mean_above",
]

_SQRT_2PI = math.sqrt(2.0 * math.pi)
_SQRT_2 = math.sqrt(2.0)

# Growable cache of log(k!), indexed by k. Filled with math.lgamma, which is
# good to a couple ulp; keeping it as an array lets the pmf ranges below stay
# vectorized instead of calling lgamma term by term.
_log_factorials = np.zeros(1)


def _log_factorial_table(upto: int) -> np.ndarray:
    global _log_factorials
    if upto >= _log_factorials.size:
        size = max(upto + 1, 2 * _log_factorials.size, 1024)
        table = np.empty(size)
        table[: _log_factorials.size] = _log_factorials
        for k in range(_log_factorials.size, size):
            table[k] = math.lgamma(k + 1.0)
        _log_factorials = table
    return _log_factorials


def std_normal_pdf(x: float) -> float:
    """Standard normal density at x."""
    if not math.isfinite(x):
        raise ValueError(f"x must be finite, got {x!r}")
    return math.exp(-0.5 * x * x) / _SQRT_2PI


def std_normal_cdf(x: float) -> float:
    """Standard normal distribution function at x.

    Evaluated as erfc(-x / sqrt(2)) / 2, which keeps full relative accuracy
    deep in the lower tail where 1 - cdf(-x) would cancel to nothing.
    """
    if not math.isfinite(x):
        raise ValueError(f"x must be finite, got {x!r}")
    return 0.5 * math.erfc(-x / _SQRT_2)


@dataclass(frozen=True)
class BinomialSpec:
    """Trial count and per-trial success probability of a binomial count."""

    trials: int
    success_prob: float

    def __post_init__(self) -> None:
        if self.trials < 0:
            raise ValueError(f"trials must be >= 0, got {self.trials}")
        if not 0.0 <= self.success_prob <= 1.0:
            raise ValueError(f"success_prob must lie in [0, 1], got {self.success_prob}")


def binomial_pmf(x: int, spec: BinomialSpec) -> float:
    """P{X = x} for X ~ Binomial(spec.trials, spec.success_prob).

    Computed in log space (log-gamma binomial coefficient plus log powers),
    so trial counts up to a million and beyond stay clear of overflow. The
    degenerate probabilities 0 and 1 short-circuit to point masses.
    """
    n, p = spec.trials, spec.success_prob
    if not 0 <= x <= n:
        raise ValueError(f"x must lie in [0, {n}], got {x}")
    if p == 0.0:
        return 1.0 if x == 0 else 0.0
    if p == 1.0:
        return 1.0 if x == n else 0.0
    lf = _log_factorial_table(n)
    log_pmf = lf[n] - lf[x] - lf[n - x] + x * math.log(p) + (n - x) * math.log1p(-p)
    return float(math.exp(log_pmf))


def _pmf_block(spec: BinomialSpec, lo: int, hi: int) -> np.ndarray:
    """pmf values for x = lo .. hi inclusive. Bounds must already be valid."""
    n, p = spec.trials, spec.success_prob
    x = np.arange(lo, hi + 1)
    if p == 0.0 or p == 1.0:
        return (x == (0 if p == 0.0 else n)).astype(float)
    lf = _log_factorial_table(n)
    log_pmf = lf[n] - lf[x] - lf[n - x] + x * math.log(p) + (n - x) * math.log1p(-p)
    return np.exp(log_pmf)


def binomial_tail_above(t: int, spec: BinomialSpec) -> float:
    """P{X > t} by compensated summation of the pmf.

    Any integer t is accepted: below 0 the tail is certain, at or past the
    trial count it is empty.
    """
    n = spec.trials
    if t < 0:
        return 1.0
    if t >= n:
        return 0.0
    return min(1.0, math.fsum(_pmf_block(spec, t + 1, n)))


_BETA_CF_MAX_ITER = 500
_BETA_CF_EPS = 1e-15
_BETA_CF_TINY = 1e-300


def _beta_continued_fraction(a: float, b: float, x: float) -> float:
    """Continued fraction for the incomplete beta ratio, by Lentz's method."""
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _BETA_CF_TINY:
        d = _BETA_CF_TINY
    d = 1.0 / d
    h = d
    for m in range(1, _BETA_CF_MAX_ITER + 1):
        m2 = 2 * m
        coeff = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + coeff * d
        if abs(d) < _BETA_CF_TINY:
            d = _BETA_CF_TINY
        c = 1.0 + coeff / c
        if abs(c) < _BETA_CF_TINY:
            c = _BETA_CF_TINY
        d = 1.0 / d
        h *= d * c
        coeff = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + coeff * d
        if abs(d) < _BETA_CF_TINY:
            d = _BETA_CF_TINY
        c = 1.0 + coeff / c
        if abs(c) < _BETA_CF_TINY:
            c = _BETA_CF_TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _BETA_CF_EPS:
            return h
    raise ValueError(f"incomplete beta continued fraction did not converge for a={a}, b={b}, x={x}")


def _regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    log_front = (
        math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
        + a * math.log(x) + b * math.log1p(-x)
    )
    front = math.exp(log_front)
    # The continued fraction converges fast only on its own side of the
    # bulk; switch to the symmetric complement past it.
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_continued_fraction(a, b, x) / a
    return 1.0 - front * _beta_continued_fraction(b, a, 1.0 - x) / b


def binomial_tail_beta_identity(t: int, spec: BinomialSpec) -> float:
    """P{X >= t} through the regularized incomplete beta identity.

    For X ~ Binomial(n, p) and 1 <= t <= n the upper tail P{X >= t} equals
    the regularized incomplete beta I_p(t, n - t + 1). This route shares no
    code with binomial_tail_above, which is the point: the two must agree
    to within 1e-10 and the test suite holds them to that.
    """
    n, p = spec.trials, spec.success_prob
    if not 1 <= t <= n:
        raise ValueError(f"t must lie in [1, {n}], got {t}")
    return _regularized_incomplete_beta(float(t), float(n - t + 1), p)


def binomial_tail_normal_approx(t: int, spec: BinomialSpec) -> float:
    """P{X > t} by the normal approximation with continuity correction.

    Returns cdf(-(t + 0.5 - n p) / sqrt(n p q)). Exposed unconditionally;
    the caller judges applicability (the usual guidance is n p q >= 9).
    """
    n, p = spec.trials, spec.success_prob
    if n < 1:
        raise ValueError(f"trials must be >= 1, got {n}")
    if not 0.0 < p < 1.0:
        raise ValueError(f"success_prob must lie strictly in (0, 1), got {p}")
    q = 1.0 - p
    return std_normal_cdf(-(t + 0.5 - n * p) / math.sqrt(n * p * q))


def truncated_normal_mean_above(mu: float, sigma: float, t: float) -> float:
    """Mean of a normal(mu, sigma) variable conditioned on exceeding t.

    Closed form mu + sigma * pdf(z) / cdf(z) with z = (mu - t) / sigma.
    When the exceedance probability underflows to zero in double precision
    the conditional mean is not representable and a ValueError is raised.
    """
    if sigma <= 0.0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    for name, value in (("mu", mu), ("t", t)):
        if not math.isfinite(value):
            raise ValueError(f"{name} must be finite, got {value!r}")
    z = (mu - t) / sigma
    exceed = std_normal_cdf(z)
    if exceed == 0.0:
        raise ValueError(
            f"exceedance probability underflows for mu={mu}, sigma={sigma}, t={t}; "
            f"conditional mean not representable"
        )
    return mu + sigma * std_normal_pdf(z) / exceed
