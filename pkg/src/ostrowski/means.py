"""Special means and the two power-function gap bounds.

The generalized logarithmic mean in its n-th power form is the average of
t^n over [a, b]; the two propositions bound |L_n^n(a, b) - x^n| by
instantiating the first-order convex-derivative and power-mean bounds with
f(t) = t^n, whose derivative magnitude |n| t^(n-1) has the required
convexity on (0, oo) for every integer |n| >= 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import EqualArgumentsError, ParamOutOfDomainError, UnsupportedOrderError


@dataclass(frozen=True)
class MeanPair:
    """Two positive, distinct real arguments."""

    alpha: float
    beta: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "beta", float(self.beta))
        if not (self.alpha > 0.0 and self.beta > 0.0):
            raise ValueError("mean arguments must be positive")
        if self.alpha == self.beta:
            raise EqualArgumentsError("mean arguments must be distinct")

    def ordered(self) -> tuple[float, float]:
        if self.alpha < self.beta:
            return self.alpha, self.beta
        return self.beta, self.alpha


def arithmetic_mean(pair: MeanPair) -> float:
    return 0.5 * (pair.alpha + pair.beta)


def logarithmic_mean(pair: MeanPair) -> float:
    return (pair.alpha - pair.beta) / (math.log(pair.alpha) - math.log(pair.beta))


def generalized_log_mean_pow(pair: MeanPair, n: int) -> float:
    """L_n^n(a, b): the average of t^n over [a, b]."""
    _check_power(n)
    if n == -1:
        raise UnsupportedOrderError(
            "n = -1 is the plain logarithmic mean; use logarithmic_mean"
        )
    a, b = pair.ordered()
    return (b ** (n + 1) - a ** (n + 1)) / ((n + 1) * (b - a))


def power_gap(pair: MeanPair, n: int, x: float) -> float:
    """|L_n^n(a, b) - x^n|, the quantity both propositions bound."""
    _check_power(n)
    a, b = _with_point(pair, x)
    return abs(_power_average(a, b, n) - x ** n)


def proposition1_bound(pair: MeanPair, n: int, x: float) -> float:
    """First-order convex-derivative bound on |L_n^n - x^n|."""
    _check_power(n)
    a, b = _with_point(pair, x)
    term_a = ((x - a) ** 2 * (3 * b - a - 2 * x) + 2 * (b - x) ** 3) * a ** (n - 1) / 6
    term_b = ((b - x) ** 2 * (b - 3 * a + 2 * x) + 2 * (x - a) ** 3) * b ** (n - 1) / 6
    return abs(n) / (b - a) ** 2 * (term_a + term_b)


def proposition2_bound(pair: MeanPair, n: int, x: float, q: float) -> float:
    """First-order power-mean bound on |L_n^n - x^n|; collapses to
    proposition1_bound at q = 1 on unit-width intervals."""
    _check_power(n)
    if q < 1.0:
        raise ParamOutOfDomainError(f"proposition 2 needs q >= 1, got q={q}")
    a, b = _with_point(pair, x)
    aq = (a ** (n - 1)) ** q
    bq = (b ** (n - 1)) ** q
    t1 = (x - a) ** 2 * (((3 * b - 2 * x - a) * aq + 2 * (x - a) * bq) / 3) ** (1 / q)
    t2 = (b - x) ** 2 * ((2 * (b - x) * aq + (b + 2 * x - 3 * a) * bq) / 3) ** (1 / q)
    return abs(n) / (2 * (b - a) ** (1 / q)) * (t1 + t2)


def _power_average(a: float, b: float, n: int) -> float:
    # average of t^n, with the n = -1 case falling back to the log form
    if n == -1:
        return (math.log(b) - math.log(a)) / (b - a)
    return (b ** (n + 1) - a ** (n + 1)) / ((n + 1) * (b - a))


def _with_point(pair: MeanPair, x: float) -> tuple[float, float]:
    a, b = pair.ordered()
    if not a <= x <= b:
        raise ValueError(f"x={x} outside [{a}, {b}]")
    return a, b


def _check_power(n) -> None:
    if not isinstance(n, int) or abs(n) < 1:
        raise UnsupportedOrderError(f"power order needs an integer |n| >= 1, got {n!r}")
