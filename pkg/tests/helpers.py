"""Shared test utilities: an independent finite-difference derivative oracle.

The oracle is a central k-th binomial difference extrapolated to step zero
through four gently shrinking steps (polynomial extrapolation in h^2).
Steps are tuned per derivative order and per function class; the halving
ladder is avoided because its small inner steps amplify rounding noise at
high orders.
"""

import math


FD_RATIOS = (1.0, 0.8, 0.6, 0.45)

# tuned base steps per derivative order, by function class
FD_STEPS = {
    "poly": {k: 1.2 for k in range(1, 7)},
    "entire": {1: 0.22, 2: 0.18, 3: 0.24, 4: 0.26, 5: 0.30, 6: 0.33},
    "pole": {1: 0.07, 2: 0.06, 3: 0.07, 4: 0.076, 5: 0.089, 6: 0.096},
    "recip": {1: 0.065, 2: 0.065, 3: 0.065, 4: 0.076, 5: 0.082, 6: 0.089},
}

# sampling windows that keep every stencil point inside the true domain
FD_WINDOWS = {
    "1/t^2[1,2]": ("pole", 1.4, 2.0),
    "t*ln(t)[0.5,2]": ("pole", 1.4, 2.0),
    "1/(1+t)[0,1]": ("recip", 0.5, 1.0),
}


def central_difference(f, x, k, h):
    """Plain second-order central k-th difference with step h."""
    total = 0.0
    for i in range(k + 1):
        total += (-1) ** i * math.comb(k, i) * f(x + (k / 2 - i) * h)
    return total / h ** k


def fd_derivative(f, x, k, h):
    """k-th derivative estimate, extrapolated to h -> 0 in powers of h^2."""
    us, vals = [], []
    for r in FD_RATIOS:
        hh = h * r
        us.append(hh * hh)
        vals.append(central_difference(f, x, k, hh))
    total = 0.0
    for i, (ui, vi) in enumerate(zip(us, vals)):
        weight = 1.0
        for j, uj in enumerate(us):
            if j != i:
                weight *= uj / (uj - ui)
        total += weight * vi
    return total


def fd_setup(entry):
    """(window_lo, window_hi, steps) for a corpus entry."""
    if entry.name in FD_WINDOWS:
        cls, lo, hi = FD_WINDOWS[entry.name]
        return lo, hi, FD_STEPS[cls]
    if entry.expression.startswith("t^"):
        return entry.interval.a, entry.interval.b, FD_STEPS["poly"]
    return entry.interval.a, entry.interval.b, FD_STEPS["entire"]
