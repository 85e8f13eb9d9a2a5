import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ostrowski import Interval, check_convexity, integrate, parse
from ostrowski.errors import MaxSubdivisionsError, NonFiniteSampleError


def test_interval_validation():
    with pytest.raises(ValueError):
        Interval(1.0, 1.0)
    with pytest.raises(ValueError):
        Interval(2.0, 1.0)
    with pytest.raises(ValueError):
        Interval(0.0, math.inf)
    iv = Interval(0, 1)
    assert iv.width == 1.0 and iv.midpoint == 0.5


def test_polynomial_integral():
    res = integrate(parse("t^2"), Interval(0, 1), 1e-12)
    assert res.value == pytest.approx(1.0 / 3.0, abs=1e-12)
    assert res.err_estimate <= 1e-12


def test_exponential_integral():
    res = integrate(parse("exp(t)"), Interval(0, 1), 1e-12)
    assert res.value == pytest.approx(math.e - 1.0, abs=1e-12)


def test_kink_integral():
    res = integrate(lambda t: np.abs(t - 0.5), Interval(0, 1), 1e-12)
    assert res.value == pytest.approx(0.25, abs=1e-11)


def test_kink_integral_off_dyadic():
    # kink not on any bisection point; adaptivity has to work for this one
    c = 1.0 / 3.0
    res = integrate(lambda t: np.abs(t - c), Interval(0, 1), 1e-11)
    exact = c ** 2 / 2 + (1 - c) ** 2 / 2
    assert res.value == pytest.approx(exact, abs=1e-10)
    assert res.subdivisions > 1


def test_degree_ten_polynomials_match_antiderivative():
    rng = np.random.default_rng(7)
    iv = Interval(-2, 3)
    for _ in range(8):
        coeffs = rng.uniform(-1, 1, size=11)
        poly = np.polynomial.Polynomial(coeffs)
        exact = poly.integ()(3.0) - poly.integ()(-2.0)
        res = integrate(lambda t: poly(t), iv, 1e-11)
        assert abs(res.value - exact) <= 1e-11 * max(1.0, abs(exact))


def test_scalar_only_integrand_fallback():
    res = integrate(lambda t: math.exp(float(t)), Interval(0, 1), 1e-10)
    assert res.value == pytest.approx(math.e - 1.0, abs=1e-10)


def test_additivity_over_subintervals():
    fn = parse("exp(t)*sin(t)")
    whole = integrate(fn, Interval(0, 2), 1e-12)
    left = integrate(fn, Interval(0, 0.7), 1e-12)
    right = integrate(fn, Interval(0.7, 2), 1e-12)
    budget = whole.err_estimate + left.err_estimate + right.err_estimate + 1e-14
    assert abs(whole.value - (left.value + right.value)) <= budget


def test_nonfinite_sample_error():
    with pytest.raises(NonFiniteSampleError):
        integrate(lambda t: 1.0 / (t - 0.31830988618), Interval(0, 1) , 1e-6)
    with pytest.raises(NonFiniteSampleError):
        integrate(lambda t: np.full_like(np.asarray(t), np.nan), Interval(0, 1), 1e-6)


def test_max_subdivisions_error():
    # sqrt kink cannot reach an impossible tolerance
    with pytest.raises(MaxSubdivisionsError):
        integrate(lambda t: np.sqrt(np.abs(t - 0.3)), Interval(0, 1), 1e-300)


def test_tolerance_must_be_positive():
    with pytest.raises(ValueError):
        integrate(parse("t"), Interval(0, 1), 0.0)


def test_determinism():
    fn = parse("exp(t)/(1+t^2)")
    first = integrate(fn, Interval(0, 3), 1e-11)
    second = integrate(fn, Interval(0, 3), 1e-11)
    assert first == second


def test_convexity_constant():
    verdict = check_convexity(lambda t: np.full_like(np.asarray(t, dtype=float), 2.0), Interval(0, 1))
    assert verdict.convex and verdict.worst_violation == 0.0


def test_convexity_exp():
    assert check_convexity(parse("exp(t)"), Interval(0, 1)).convex


def test_convexity_abs_cos_rejected():
    verdict = check_convexity(lambda t: np.abs(np.cos(t)), Interval(0, 3))
    assert not verdict.convex
    assert verdict.worst_violation > 0.0
    assert verdict.grid_size == 513


def test_convexity_nonfinite():
    with pytest.raises(NonFiniteSampleError):
        check_convexity(lambda t: np.log(t), Interval(0, 1))


@given(scale=st.floats(1e-3, 1e6))
@settings(max_examples=40, deadline=None)
def test_convexity_scale_invariance(scale):
    convex_g = lambda t: scale * np.exp(t)
    nonconvex_g = lambda t: scale * np.abs(np.cos(t))
    assert check_convexity(convex_g, Interval(0, 1)).convex
    assert not check_convexity(nonconvex_g, Interval(0, 3)).convex
