"""Peano kernels, truncated Taylor-type sums, and numeric identity checks.

For an n-times differentiable f on [a, b] and a rule point x, the integral
of f splits exactly into a finite sum of derivative terms at x plus a
kernel-weighted integral of the n-th derivative.  This module evaluates the
pieces and verifies the identity against the quadrature oracle, for the
pointwise form, its midpoint specialization, and the trapezoid (endpoint
averaged) form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .expr import ExprFunction
from .quadrature import DEFAULT_TOL, Interval, integrate

POINT = "point"
MIDPOINT = "midpoint"
TRAPEZOID = "trapezoid"


@dataclass(frozen=True)
class RuleForm:
    """Rule-point selector: a point x in [a, b], the midpoint, or trapezoid."""

    kind: str
    x: float | None = None

    def __post_init__(self):
        if self.kind not in (POINT, MIDPOINT, TRAPEZOID):
            raise ValueError(f"unknown rule form {self.kind!r}")
        if self.kind == POINT:
            if self.x is None:
                raise ValueError("point form needs x")
            object.__setattr__(self, "x", float(self.x))
        elif self.x is not None:
            raise ValueError(f"{self.kind} form takes no x")

    @classmethod
    def point(cls, x: float) -> "RuleForm":
        return cls(POINT, x)

    @classmethod
    def midpoint(cls) -> "RuleForm":
        return cls(MIDPOINT)

    @classmethod
    def trapezoid(cls) -> "RuleForm":
        return cls(TRAPEZOID)

    def resolve_x(self, iv: Interval) -> float | None:
        if self.kind == POINT:
            if not iv.contains(self.x):
                raise ValueError(f"rule point {self.x} outside [{iv.a}, {iv.b}]")
            return self.x
        if self.kind == MIDPOINT:
            return iv.midpoint
        return None


@dataclass(frozen=True)
class IdentityReport:
    integral: float
    taylor_sum: float
    remainder_integral: float
    residual: float
    quad_err: float
    ok: bool


def kernel_K(n: int, iv: Interval, x: float, t):
    """Pointwise kernel: (t-a)^n/n! for t <= x, else (t-b)^n/n!.

    The boundary t == x belongs to the left branch (closed [a, x]).
    """
    _check_order(n)
    if not iv.contains(x):
        raise ValueError(f"x={x} outside [{iv.a}, {iv.b}]")
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < iv.a) or np.any(t_arr > iv.b):
        raise ValueError("t outside the interval")
    fact = math.factorial(n)
    out = np.where(t_arr <= x, (t_arr - iv.a) ** n, (t_arr - iv.b) ** n) / fact
    return float(out) if t_arr.ndim == 0 else out


def kernel_T(n: int, iv: Interval, t):
    """Trapezoid kernel: [(b-t)^n + (-1)^n (t-a)^n] / (2 n!)."""
    _check_order(n)
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < iv.a) or np.any(t_arr > iv.b):
        raise ValueError("t outside the interval")
    fact = math.factorial(n)
    out = ((iv.b - t_arr) ** n + (-1.0) ** n * (t_arr - iv.a) ** n) / (2.0 * fact)
    return float(out) if t_arr.ndim == 0 else out


def taylor_sum(fn: ExprFunction, n: int, iv: Interval, form: RuleForm) -> float:
    """The exact finite derivative sum for the given rule form.

    Midpoint delegates to the pointwise sum at (a+b)/2, so the two agree to
    the last bit.  The trapezoid sum averages endpoint derivatives with the
    alternating sign on the right endpoint.
    """
    _check_order(n)
    a, b = iv.a, iv.b
    if form.kind == TRAPEZOID:
        jet_a = fn.taylor(a, n - 1)
        jet_b = fn.taylor(b, n - 1)
        terms = [
            (b - a) ** (k + 1)
            / math.factorial(k + 1)
            * 0.5
            * (jet_a.derivative(k) + (-1.0) ** k * jet_b.derivative(k))
            for k in range(n)
        ]
        return math.fsum(terms)
    x = form.resolve_x(iv)
    jet = fn.taylor(x, n - 1)
    terms = [
        ((b - x) ** (k + 1) + (-1.0) ** k * (x - a) ** (k + 1))
        / math.factorial(k + 1)
        * jet.derivative(k)
        for k in range(n)
    ]
    return math.fsum(terms)


def remainder_integral(
    fn: ExprFunction, n: int, iv: Interval, form: RuleForm, tol: float = DEFAULT_TOL
):
    """Oracle value of the kernel-weighted integral of the n-th derivative.

    Returns (value, err_estimate).  The pointwise kernel is non-smooth at x,
    so that integral is split there into two smooth pieces.
    """
    _check_order(n)
    a, b = iv.a, iv.b
    fact = math.factorial(n)
    if form.kind == TRAPEZOID:
        res = integrate(lambda t: kernel_T(n, iv, t) * fn.deriv(t, n), iv, tol)
        return res.value, res.err_estimate
    x = form.resolve_x(iv)
    value = 0.0
    err = 0.0
    if x > a:
        res = integrate(
            lambda t: (t - a) ** n / fact * fn.deriv(t, n), Interval(a, x), tol
        )
        value += res.value
        err += res.err_estimate
    if x < b:
        res = integrate(
            lambda t: (t - b) ** n / fact * fn.deriv(t, n), Interval(x, b), tol
        )
        value += res.value
        err += res.err_estimate
    return value, err


def verify_identity(
    fn: ExprFunction,
    n: int,
    iv: Interval,
    form: RuleForm,
    tol: float = 1e-9,
) -> IdentityReport:
    """Check the exact-representation identity numerically.

    The remainder enters with sign (-1)^n for the pointwise and midpoint
    forms and with + for the trapezoid form.  Success means the residual is
    within tol plus the oracle's accumulated error estimates, so quadrature
    noise cannot produce false failures.
    """
    oracle_tol = min(DEFAULT_TOL, max(tol / 100.0, 1e-13))
    total = integrate(fn, iv, oracle_tol)
    s = taylor_sum(fn, n, iv, form)
    rem, rem_err = remainder_integral(fn, n, iv, form, oracle_tol)
    sign = 1.0 if form.kind == TRAPEZOID else (-1.0) ** n
    residual = abs(total.value - s - sign * rem)
    quad_err = total.err_estimate + rem_err
    return IdentityReport(
        integral=total.value,
        taylor_sum=s,
        remainder_integral=rem,
        residual=residual,
        quad_err=quad_err,
        ok=residual <= tol + quad_err,
    )


def _check_order(n):
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError(f"order n must be a positive integer, got {n!r}")
