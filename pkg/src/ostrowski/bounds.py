"""Right-hand sides of all bound families, plus orchestration.

Five families bound the gap between the integral of f and its truncated
derivative sum at a rule point x:

* classic        -- first-order sup-norm bound with the sharp 1/4 constant,
* convex-direct  -- convexity of |f^(n)| applied to the kernel remainder,
* holder         -- Hoelder split of the kernel against |f^(n)|,
* alt-holder     -- Hoelder split with the weight folded into the density,
* power-mean     -- power-mean split, reducing to convex-direct at q = 1.

The holder and alt-holder families ship in two variants.  The stated closed
forms are dimensionally inconsistent with the convexity/Hoelder steps that
produce them (an exponent 1/p is dropped on the weight factor, and one
bracket keeps a stray power p+1); ``Variant.CORRECTED`` completes those
steps properly and is the default, ``Variant.PAPER`` evaluates the stated
forms verbatim so the discrepancy can be measured.  Only the corrected
forms survive oracle validation across interval scales.

Every family has a value-level function taking the endpoint derivative
magnitudes directly (useful for algebraic property checks) and an
expression-level wrapper that extracts those magnitudes from a parsed
function.  All functions are pure; ``evaluate`` performs no shared mutation
beyond internal memoization of oracle integrals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from .errors import ParamOutOfDomainError
from .expr import ExprFunction
from .identity import TRAPEZOID, RuleForm, taylor_sum
from .quadrature import (
    DEFAULT_TOL,
    ConvexityVerdict,
    Interval,
    QuadResult,
    check_convexity,
    integrate,
)

#: slack below -(lhs_err + this) marks a bound as violated
VALIDITY_TOL = 1e-10

#: grid used to estimate sup|f'| for the classic bound (an under-estimate
#: in principle; documented as the non-rigorous baseline)
SUP_GRID = 513

MIDPOINT_X = "midpoint"
LEFT_X = "left"
RIGHT_X = "right"
TRAPEZOID_X = "trapezoid"
COROLLARY_POINTS = (MIDPOINT_X, LEFT_X, RIGHT_X, TRAPEZOID_X)


class Family(str, Enum):
    CLASSIC = "classic"
    CONVEX_DIRECT = "convex-direct"
    HOLDER = "holder"
    ALT_HOLDER = "alt-holder"
    POWER_MEAN = "power-mean"


class Variant(str, Enum):
    CORRECTED = "corrected"
    PAPER = "paper"


FAMILY_ORDER = tuple(Family)


def holder_conjugate(p: float) -> float:
    if p <= 1.0:
        raise ParamOutOfDomainError(f"holder exponent needs p > 1, got p={p}")
    return p / (p - 1.0)


def alt_holder_admissible(n: int, p: float) -> bool:
    """Integrability constraint n*q + q - p - 1 > 0 with q conjugate to p."""
    q = holder_conjugate(p)
    return n * q + q - p - 1.0 > 0.0


def alt_holder_p_limit(n: int) -> float:
    """Supremum of admissible p for the alt-holder family at order n."""
    return ((n + 1) + math.sqrt((n + 1) ** 2 + 4.0)) / 2.0


# --- value-level right-hand sides -------------------------------------------


def classic_rhs(sup_d1: float, a: float, b: float, x: float) -> float:
    width = b - a
    return width * sup_d1 * (0.25 + ((x - 0.5 * (a + b)) / width) ** 2)


def convex_direct_rhs(n: int, a: float, b: float, x: float, fa: float, fb: float) -> float:
    fact = math.factorial(n)
    c1 = (x - a) ** (n + 1) * ((n + 2) * (b - x) + (x - a)) / ((n + 1) * (n + 2)) + (
        b - x
    ) ** (n + 2) / (n + 2)
    c2 = (b - x) ** (n + 1) * ((n + 2) * (x - a) + (b - x)) / ((n + 1) * (n + 2)) + (
        x - a
    ) ** (n + 2) / (n + 2)
    return (fa * c1 + fb * c2) / (fact * (b - a))


def holder_rhs(
    n: int,
    a: float,
    b: float,
    x: float,
    p: float,
    fa: float,
    fb: float,
    variant: Variant = Variant.CORRECTED,
) -> float:
    q = holder_conjugate(p)
    fact = math.factorial(n)
    width = b - a
    faq, fbq = fa ** q, fb ** q
    if variant == Variant.PAPER:
        def term(s, w1, w2):
            if s == 0.0:
                return 0.0
            return s ** (n * p + 1 + 1 / q) / (n * p + 1) * (w1 * faq + w2 * fbq) ** (1 / q)

        t1 = term(x - a, (2 * b - a - x) / 2, (x - a) / 2)
        t2 = term(b - x, (b - x) / 2, (b + x - 2 * a) / 2)
        return (t1 + t2) / (fact * width ** (1 / q))

    def term(s, w1, w2):
        if s == 0.0:
            return 0.0
        weight = (s ** (n * p + 1) / (n * p + 1)) ** (1 / p)
        return weight * (w1 * faq + w2 * fbq) ** (1 / q)

    t1 = term(x - a, (x - a) * (2 * b - a - x) / (2 * width), (x - a) ** 2 / (2 * width))
    t2 = term(b - x, (b - x) ** 2 / (2 * width), (b - x) * (b + x - 2 * a) / (2 * width))
    return (t1 + t2) / fact


def alt_holder_rhs(
    n: int,
    a: float,
    b: float,
    x: float,
    p: float,
    fa: float,
    fb: float,
    variant: Variant = Variant.CORRECTED,
) -> float:
    q = holder_conjugate(p)
    denom = n * q + q - p - 1.0
    if denom <= 0.0:
        raise ParamOutOfDomainError(
            f"alt-holder needs n*q + q - p - 1 > 0; p={p} exceeds the "
            f"limit {alt_holder_p_limit(n):.6f} for n={n}"
        )
    fact = math.factorial(n)
    width = b - a
    faq, fbq = fa ** q, fb ** q
    pref = ((q - 1.0) / denom) ** (1 - 1 / q) / (fact * (width * (p + 2)) ** (1 / q))
    if variant == Variant.PAPER:
        w1b = (x - a) ** (p + 1)
        w2a = (b - x) ** (p + 1)
    else:
        w1b = x - a
        w2a = b - x
    t1 = 0.0
    if x > a:
        br1 = ((p + 2) * (b - x) + (x - a)) / (p + 1) * faq + w1b * fbq
        t1 = (x - a) ** (n + 1) * br1 ** (1 / q)
    t2 = 0.0
    if x < b:
        br2 = w2a * faq + ((p + 2) * (x - a) + (b - x)) / (p + 1) * fbq
        t2 = (b - x) ** (n + 1) * br2 ** (1 / q)
    return pref * (t1 + t2)


def power_mean_rhs(
    n: int, a: float, b: float, x: float, q: float, fa: float, fb: float
) -> float:
    if q < 1.0:
        raise ParamOutOfDomainError(f"power-mean exponent needs q >= 1, got q={q}")
    fact = math.factorial(n + 1)
    width = b - a
    faq, fbq = fa ** q, fb ** q
    pref = 1.0 / (fact * (width * (n + 2)) ** (1 / q))
    t1 = 0.0
    if x > a:
        br1 = ((n + 2) * (b - x) + (x - a)) * faq + (n + 1) * (x - a) * fbq
        t1 = (x - a) ** (n + 1) * br1 ** (1 / q)
    t2 = 0.0
    if x < b:
        br2 = (n + 1) * (b - x) * faq + ((n + 2) * (x - a) + (b - x)) * fbq
        t2 = (b - x) ** (n + 1) * br2 ** (1 / q)
    return pref * (t1 + t2)


def corollary_rhs(
    family: Family,
    n: int,
    a: float,
    b: float,
    which: str,
    fa: float,
    fb: float,
    p: float | None = None,
    q: float | None = None,
    variant: Variant = Variant.CORRECTED,
) -> float:
    """Closed forms at the midpoint, endpoints, and the averaged trapezoid rule.

    convex-direct and power-mean corollaries are consistent with the general
    formulas, so they carry a single form.  For holder and alt-holder the
    PAPER variant evaluates the stated corollaries verbatim (including the
    trapezoid form that drops its q-dependence, and the alt-holder trapezoid
    sum that is stated without the 1/2), while CORRECTED specializes the
    corrected general formulas and averages the endpoint forms.
    """
    if which not in COROLLARY_POINTS:
        raise ValueError(f"unknown corollary point {which!r}")
    width = b - a

    if family == Family.CONVEX_DIRECT:
        if which == MIDPOINT_X:
            return width ** (n + 1) / (2 ** n * math.factorial(n + 1)) * (fa + fb) / 2
        if which == LEFT_X:
            return width ** (n + 1) / math.factorial(n + 2) * ((n + 1) * fa + fb)
        if which == RIGHT_X:
            return width ** (n + 1) / math.factorial(n + 2) * (fa + (n + 1) * fb)
        left = corollary_rhs(family, n, a, b, LEFT_X, fa, fb)
        right = corollary_rhs(family, n, a, b, RIGHT_X, fa, fb)
        return 0.5 * (left + right)

    if family == Family.POWER_MEAN:
        if q is None or q < 1.0:
            raise ParamOutOfDomainError(f"power-mean corollary needs q >= 1, got q={q}")
        faq, fbq = fa ** q, fb ** q
        pref = width ** (n + 1) / (math.factorial(n + 1) * (n + 2) ** (1 / q))
        if which == MIDPOINT_X:
            return (
                width ** (n + 1)
                / (math.factorial(n + 1) * 2 ** (n + 1 + 1 / q) * (n + 2) ** (1 / q))
                * (
                    ((n + 3) * faq + (n + 1) * fbq) ** (1 / q)
                    + ((n + 1) * faq + (n + 3) * fbq) ** (1 / q)
                )
            )
        if which == LEFT_X:
            return pref * ((n + 1) * faq + fbq) ** (1 / q)
        if which == RIGHT_X:
            return pref * (faq + (n + 1) * fbq) ** (1 / q)
        left = corollary_rhs(family, n, a, b, LEFT_X, fa, fb, q=q)
        right = corollary_rhs(family, n, a, b, RIGHT_X, fa, fb, q=q)
        return 0.5 * (left + right)

    if family == Family.HOLDER:
        qc = holder_conjugate(p)
        fact = math.factorial(n)
        faq, fbq = fa ** qc, fb ** qc
        if variant == Variant.PAPER:
            if which == TRAPEZOID_X:
                # stated trapezoid corollary carries no q at all
                return width ** (n + 1) / math.factorial(n + 1) * (fa + fb) / 2
            pref = 1.0 / ((n * p + 1) * fact)
            if which == MIDPOINT_X:
                return (
                    (width / 2) ** (n * p + 1 + 1 / qc)
                    * pref
                    * (
                        ((3 * faq + fbq) / 4) ** (1 / qc)
                        + ((faq + 3 * fbq) / 4) ** (1 / qc)
                    )
                )
            return width ** (n * p + 1 + 1 / qc) * pref * ((faq + fbq) / 2) ** (1 / qc)
        pref = 1.0 / (fact * (n * p + 1) ** (1 / p))
        if which == MIDPOINT_X:
            return (
                (width / 2) ** (n + 1)
                * pref
                * (
                    ((3 * faq + fbq) / 4) ** (1 / qc)
                    + ((faq + 3 * fbq) / 4) ** (1 / qc)
                )
            )
        if which in (LEFT_X, RIGHT_X):
            return width ** (n + 1) * pref * ((faq + fbq) / 2) ** (1 / qc)
        left = corollary_rhs(family, n, a, b, LEFT_X, fa, fb, p=p, variant=variant)
        right = corollary_rhs(family, n, a, b, RIGHT_X, fa, fb, p=p, variant=variant)
        return 0.5 * (left + right)

    if family == Family.ALT_HOLDER:
        qc = holder_conjugate(p)
        denom = n * qc + qc - p - 1.0
        if denom <= 0.0:
            raise ParamOutOfDomainError(
                f"alt-holder needs n*q + q - p - 1 > 0; p={p} exceeds the "
                f"limit {alt_holder_p_limit(n):.6f} for n={n}"
            )
        fact = math.factorial(n)
        faq, fbq = fa ** qc, fb ** qc
        shape = ((qc - 1.0) / denom) ** (1 - 1 / qc)
        if variant == Variant.PAPER:
            pref = width ** (n + 1) / (fact * (p + 2) ** (1 / qc)) * shape
            if which == MIDPOINT_X:
                hp = (width / 2) ** p
                return (
                    width ** (n + 1)
                    / (fact * 2 ** (n + 1 + 1 / qc) * (p + 2) ** (1 / qc))
                    * shape
                    * (
                        ((p + 3) / (p + 1) * faq + hp * fbq) ** (1 / qc)
                        + (hp * faq + (p + 3) / (p + 1) * fbq) ** (1 / qc)
                    )
                )
            if which == LEFT_X:
                return pref * (width ** p * faq + fbq / (p + 1)) ** (1 / qc)
            if which == RIGHT_X:
                return pref * (faq / (p + 1) + width ** p * fbq) ** (1 / qc)
            # stated trapezoid corollary sums the endpoint bounds without the 1/2
            left = corollary_rhs(family, n, a, b, LEFT_X, fa, fb, p=p, variant=variant)
            right = corollary_rhs(family, n, a, b, RIGHT_X, fa, fb, p=p, variant=variant)
            return left + right
        pref = width ** (n + 1) / (fact * (p + 2) ** (1 / qc)) * shape
        if which == MIDPOINT_X:
            return (
                (width / 2) ** (n + 1)
                / (fact * (2 * (p + 2)) ** (1 / qc))
                * shape
                * (
                    ((p + 3) / (p + 1) * faq + fbq) ** (1 / qc)
                    + (faq + (p + 3) / (p + 1) * fbq) ** (1 / qc)
                )
            )
        if which == LEFT_X:
            return pref * (faq + fbq / (p + 1)) ** (1 / qc)
        if which == RIGHT_X:
            return pref * (faq / (p + 1) + fbq) ** (1 / qc)
        left = corollary_rhs(family, n, a, b, LEFT_X, fa, fb, p=p, variant=variant)
        right = corollary_rhs(family, n, a, b, RIGHT_X, fa, fb, p=p, variant=variant)
        return 0.5 * (left + right)

    raise ValueError(f"family {family} has no corollary closed forms")


# --- expression-level operations ---------------------------------------------


@lru_cache(maxsize=512)
def _endpoint_deriv_mags(fn: ExprFunction, n: int, iv: Interval):
    return abs(fn.deriv(iv.a, n)), abs(fn.deriv(iv.b, n))


@lru_cache(maxsize=512)
def _oracle_integral(fn: ExprFunction, iv: Interval, tol: float = DEFAULT_TOL) -> QuadResult:
    return integrate(fn, iv, tol)


@lru_cache(maxsize=2048)
def _convexity_gate(fn: ExprFunction, n: int, exponent: float, iv: Interval) -> ConvexityVerdict:
    def gate(t):
        return np.abs(fn.deriv(t, n)) ** exponent

    return check_convexity(gate, iv)


def bound_classic(fn: ExprFunction, iv: Interval, x: float) -> float:
    """Sup-norm bound on |f(x) - avg(f)|; sup|f'| estimated on a fixed grid."""
    if not iv.contains(x):
        raise ValueError(f"x={x} outside [{iv.a}, {iv.b}]")
    sup_d1 = float(np.max(np.abs(fn.deriv(iv.grid(SUP_GRID), 1))))
    return classic_rhs(sup_d1, iv.a, iv.b, x)


def bound_convex_direct(fn: ExprFunction, n: int, iv: Interval, x: float) -> float:
    fa, fb = _endpoint_deriv_mags(fn, n, iv)
    return convex_direct_rhs(n, iv.a, iv.b, x, fa, fb)


def bound_holder(
    fn: ExprFunction,
    n: int,
    iv: Interval,
    x: float,
    p: float,
    variant: Variant = Variant.CORRECTED,
) -> float:
    fa, fb = _endpoint_deriv_mags(fn, n, iv)
    return holder_rhs(n, iv.a, iv.b, x, p, fa, fb, variant)


def bound_alt_holder(
    fn: ExprFunction,
    n: int,
    iv: Interval,
    x: float,
    p: float,
    variant: Variant = Variant.CORRECTED,
) -> float:
    fa, fb = _endpoint_deriv_mags(fn, n, iv)
    return alt_holder_rhs(n, iv.a, iv.b, x, p, fa, fb, variant)


def bound_power_mean(fn: ExprFunction, n: int, iv: Interval, x: float, q: float) -> float:
    fa, fb = _endpoint_deriv_mags(fn, n, iv)
    return power_mean_rhs(n, iv.a, iv.b, x, q, fa, fb)


def corollary_closed_form(
    family: Family,
    fn: ExprFunction,
    n: int,
    iv: Interval,
    which: str,
    p: float | None = None,
    q: float | None = None,
    variant: Variant = Variant.CORRECTED,
) -> float:
    fa, fb = _endpoint_deriv_mags(fn, n, iv)
    return corollary_rhs(family, n, iv.a, iv.b, which, fa, fb, p=p, q=q, variant=variant)


@dataclass(frozen=True)
class BoundRequest:
    """One bound evaluation: family, order, rule form, exponents, variant."""

    family: Family
    n: int
    form: RuleForm
    p: float | None = None
    q: float | None = None
    variant: Variant = Variant.CORRECTED

    def validate(self, iv: Interval) -> None:
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise ParamOutOfDomainError(f"order n must be a positive integer, got {self.n!r}")
        self.form.resolve_x(iv)
        if self.family == Family.CLASSIC:
            if self.n != 1:
                raise ParamOutOfDomainError("classic bound applies to n = 1 only")
            if self.form.kind == TRAPEZOID:
                raise ParamOutOfDomainError("classic bound has no trapezoid form")
        elif self.family == Family.HOLDER:
            if self.p is None:
                raise ParamOutOfDomainError("holder bound needs p")
            holder_conjugate(self.p)
        elif self.family == Family.ALT_HOLDER:
            if self.p is None:
                raise ParamOutOfDomainError("alt-holder bound needs p")
            if not alt_holder_admissible(self.n, self.p):
                raise ParamOutOfDomainError(
                    f"alt-holder needs n*q + q - p - 1 > 0; p={self.p} exceeds "
                    f"the limit {alt_holder_p_limit(self.n):.6f} for n={self.n}"
                )
        elif self.family == Family.POWER_MEAN:
            if self.q is None or self.q < 1.0:
                raise ParamOutOfDomainError(
                    f"power-mean bound needs q >= 1, got q={self.q}"
                )

    @property
    def gate_exponent(self) -> float | None:
        """Power of |f^(n)| whose convexity the family actually assumes."""
        if self.family == Family.CONVEX_DIRECT:
            return 1.0
        if self.family in (Family.HOLDER, Family.ALT_HOLDER):
            return holder_conjugate(self.p)
        if self.family == Family.POWER_MEAN:
            return float(self.q)
        return None


@dataclass(frozen=True)
class BoundReport:
    lhs: float
    lhs_err: float
    rhs: float
    slack: float
    convexity: ConvexityVerdict
    valid: bool


def evaluate(req: BoundRequest, fn: ExprFunction, iv: Interval) -> BoundReport:
    """True remainder from the oracle vs. the requested right-hand side.

    valid means the convexity gate passed and the bound dominates the
    remainder up to the oracle error budget.
    """
    req.validate(iv)
    total = _oracle_integral(fn, iv)
    s = taylor_sum(fn, req.n, iv, req.form)
    lhs = abs(total.value - s)
    lhs_err = total.err_estimate

    if req.family == Family.CLASSIC:
        verdict = ConvexityVerdict(convex=True, worst_violation=0.0, grid_size=0)
        x = req.form.resolve_x(iv)
        # scale the stated average-form bound so it caps |integral - (b-a) f(x)|
        rhs = iv.width * bound_classic(fn, iv, x)
    else:
        verdict = _convexity_gate(fn, req.n, req.gate_exponent, iv)
        if req.form.kind == TRAPEZOID:
            rhs = corollary_closed_form(
                req.family, fn, req.n, iv, TRAPEZOID_X, p=req.p, q=req.q, variant=req.variant
            )
        else:
            x = req.form.resolve_x(iv)
            if req.family == Family.CONVEX_DIRECT:
                rhs = bound_convex_direct(fn, req.n, iv, x)
            elif req.family == Family.HOLDER:
                rhs = bound_holder(fn, req.n, iv, x, req.p, req.variant)
            elif req.family == Family.ALT_HOLDER:
                rhs = bound_alt_holder(fn, req.n, iv, x, req.p, req.variant)
            else:
                rhs = bound_power_mean(fn, req.n, iv, x, req.q)

    slack = rhs - lhs
    valid = verdict.convex and slack >= -(lhs_err + VALIDITY_TOL)
    return BoundReport(
        lhs=lhs, lhs_err=lhs_err, rhs=rhs, slack=slack, convexity=verdict, valid=valid
    )
