"""Closed-form acceptance probabilities and concentration bounds for the
deletion games."""

from __future__ import annotations

import math
from fractions import Fraction


def cheat_acceptance_exact(t: int, r: int, g: int, q: int) -> Fraction:
    """Exact acceptance probability of a g-position cheater.

    The cheater Fourier-measures t-g positions honestly and fabricates the
    remaining g.  A fabricated position only hurts when it collides with one
    of the r hidden check positions, which happens h times with
    hypergeometric probability, and each collision survives verification
    with probability 1/q:  sum_h P[hyper(t, r, g) = h] * q^-h.
    """
    if not (0 <= g <= t and 0 <= r <= t):
        raise ValueError("need 0 <= g <= t and 0 <= r <= t")
    if q < 2:
        raise ValueError("field order must be >= 2")
    total = Fraction(0)
    denom = math.comb(t, r)
    for h in range(0, min(g, r) + 1):
        ways = math.comb(g, h) * math.comb(t - g, r - h)
        if ways == 0:
            continue
        total += Fraction(ways, denom) * Fraction(1, q**h)
    return total


def hoeffding_bound(t: int, r: int, ell: int | float) -> float:
    """Two-sided Hoeffding tail for the check-mismatch count.

    With ell*r/(2t) expected mismatches among r sampled checks, the chance
    that a certificate at data-distance >= ell/2 still matches every check
    is at most 2*exp(-2*(ell*r/2t)^2 / r) = 2*exp(-ell^2 r / (2 t^2)).
    """
    if t <= 0 or r <= 0 or ell <= 0:
        raise ValueError("inputs must be positive")
    return 2.0 * math.exp(-(ell**2) * r / (2.0 * t**2))


def hoeffding_bound_derived(lam: int) -> float:
    """The bound at derived parameters, where ell = t*log2(lam)/sqrt(r)
    makes the exponent collapse to log2(lam)^2 / 2."""
    if lam < 2:
        raise ValueError("security parameter must be >= 2")
    return 2.0 * math.exp(-(math.log2(lam) ** 2) / 2.0)


def binomial_sigma(p: float, trials: int) -> float:
    """Standard deviation of an empirical frequency over Bernoulli trials."""
    if trials <= 0:
        raise ValueError("need at least one trial")
    return math.sqrt(max(p * (1.0 - p), 1e-12) / trials)
