"""Brute-force oracle: adaptive integration and a grid convexity checker.

Integration uses an embedded Gauss pair (7- and 15-point rules on each
panel) with the pair difference as the error estimate and globally adaptive
bisection of the worst panel.  It is a plain floating-point scheme with the
usual reliability of such estimates, not a rigorous enclosure; tolerances
elsewhere in the package are sized accordingly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import MaxSubdivisionsError, NonFiniteSampleError

_G7_NODES, _G7_WEIGHTS = np.polynomial.legendre.leggauss(7)
_G15_NODES, _G15_WEIGHTS = np.polynomial.legendre.leggauss(15)

DEFAULT_TOL = 1e-11
CONVEXITY_GRID = 513
CONVEXITY_TOL = 1e-9
MAX_PANELS = 4096


@dataclass(frozen=True)
class Interval:
    """Closed interval [a, b] with a < b."""

    a: float
    b: float

    def __post_init__(self):
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise ValueError("interval endpoints must be finite")
        if not self.a < self.b:
            raise ValueError(f"interval needs a < b, got [{self.a}, {self.b}]")

    @property
    def width(self) -> float:
        return self.b - self.a

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.a + self.b)

    def grid(self, count: int) -> np.ndarray:
        return np.linspace(self.a, self.b, count)

    def contains(self, x: float) -> bool:
        return self.a <= x <= self.b


@dataclass(frozen=True)
class QuadResult:
    value: float
    err_estimate: float
    subdivisions: int


@dataclass(frozen=True)
class ConvexityVerdict:
    convex: bool
    worst_violation: float
    grid_size: int


def _vectorized(g):
    """Wrap g so it maps float arrays to float arrays, looping if needed."""
    state = {"pointwise": False}

    def call(xs):
        if not state["pointwise"]:
            try:
                ys = np.asarray(g(xs), dtype=float)
                if ys.shape == xs.shape:
                    return ys
            except (TypeError, ValueError):
                pass
            state["pointwise"] = True
        return np.array([float(g(x)) for x in xs], dtype=float)

    return call


def integrate(g, iv: Interval, tol: float = DEFAULT_TOL) -> QuadResult:
    """Integrate g over iv to absolute-or-relative tolerance tol.

    Deterministic for fixed inputs.  Raises MaxSubdivisionsError when the
    panel budget is exhausted and NonFiniteSampleError when g returns a
    NaN or infinity.
    """
    if tol <= 0.0:
        raise ValueError("tolerance must be positive")
    call = _vectorized(g)

    def panel(lo, hi):
        mid = 0.5 * (lo + hi)
        half = 0.5 * (hi - lo)
        xs = np.concatenate((mid + half * _G7_NODES, mid + half * _G15_NODES))
        ys = call(xs)
        if not np.all(np.isfinite(ys)):
            raise NonFiniteSampleError(
                f"integrand returned a non-finite value on [{lo}, {hi}]"
            )
        i7 = half * float(ys[:7] @ _G7_WEIGHTS)
        i15 = half * float(ys[7:] @ _G15_WEIGHTS)
        return (lo, hi, i15, abs(i15 - i7))

    panels = [panel(iv.a, iv.b)]
    while True:
        value = math.fsum(p[2] for p in panels)
        err = math.fsum(p[3] for p in panels)
        if err <= max(tol, tol * abs(value)):
            return QuadResult(value=value, err_estimate=err, subdivisions=len(panels))
        if len(panels) >= MAX_PANELS:
            raise MaxSubdivisionsError(
                f"tolerance {tol} unreachable with {MAX_PANELS} panels "
                f"(error estimate {err})"
            )
        worst = max(range(len(panels)), key=lambda i: panels[i][3])
        lo, hi, _, _ = panels[worst]
        mid = 0.5 * (lo + hi)
        panels[worst : worst + 1] = [panel(lo, mid), panel(mid, hi)]


def check_convexity(
    g,
    iv: Interval,
    grid_size: int = CONVEXITY_GRID,
    tol_abs: float = CONVEXITY_TOL,
    tol_rel: float = CONVEXITY_TOL,
) -> ConvexityVerdict:
    """Grid test: convex iff all second differences exceed a scale-aware -tol.

    worst_violation is the magnitude of the most negative second difference
    (0 when there is none), so the verdict is invariant under positive
    rescaling of g up to the tolerance scaling.
    """
    xs = iv.grid(grid_size)
    ys = _vectorized(g)(xs)
    if not np.all(np.isfinite(ys)):
        raise NonFiniteSampleError("grid function returned a non-finite value")
    second = ys[:-2] - 2.0 * ys[1:-1] + ys[2:]
    worst = max(0.0, -float(second.min())) if second.size else 0.0
    tol = max(tol_abs, tol_rel * float(np.max(np.abs(ys))))
    return ConvexityVerdict(convex=worst <= tol, worst_violation=worst, grid_size=grid_size)
