import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ostrowski import corpus, parse
from ostrowski.errors import DomainError, ExprSyntaxError, OrderOverflowError
from ostrowski.expr import MAX_ORDER, _jmul

from helpers import fd_derivative, fd_setup


def test_parse_smoke():
    fn = parse("exp(t)")
    assert fn.source == "exp(t)"
    assert fn(0.0) == 1.0


def test_power_evaluation():
    assert parse("t^2")(3.0) == 9.0


@pytest.mark.parametrize(
    "text, offset",
    [
        ("t +", 3),
        ("(t", 2),
        ("t^", 2),
        ("2 * * t", 4),
        ("foo(t)", 0),
        ("t^t", 2),
        ("", 0),
    ],
)
def test_syntax_errors_carry_position(text, offset):
    with pytest.raises(ExprSyntaxError) as err:
        parse(text)
    assert err.value.position == offset


def test_trailing_input_rejected():
    with pytest.raises(ExprSyntaxError):
        parse("t) + 1")


def test_taylor_exp():
    jet = parse("exp(t)").taylor(0.0, 3)
    assert jet.coefficients == pytest.approx((1.0, 1.0, 0.5, 1.0 / 6.0), abs=1e-15)


def test_taylor_polynomial():
    jet = parse("t^2").taylor(1.0, 2)
    assert jet.coefficients == pytest.approx((1.0, 2.0, 1.0), abs=1e-15)


def test_taylor_sine():
    jet = parse("sin(t)").taylor(0.0, 3)
    assert jet.coefficients == pytest.approx((0.0, 1.0, 0.0, -1.0 / 6.0), abs=1e-15)


def test_constant_jet_vanishes_above_zero():
    jet = parse("5").taylor(2.7, 6)
    assert jet.coefficients[0] == 5.0
    assert all(c == 0.0 for c in jet.coefficients[1:])


def test_deriv_examples():
    assert parse("t^4").deriv(1.0, 2) == pytest.approx(12.0, abs=1e-12)
    assert parse("5").deriv(0.3, 1) == 0.0
    assert parse("exp(t)").deriv(1.0, 3) == pytest.approx(math.e, rel=1e-15)


def test_deriv_vectorized_matches_scalar():
    fn = parse("exp(t)*sin(t) + t^3/(1+t^2)")
    ts = np.linspace(0.1, 2.0, 17)
    for k in range(0, 5):
        vec = fn.deriv(ts, k)
        scl = np.array([fn.deriv(float(t), k) for t in ts])
        np.testing.assert_allclose(vec, scl, rtol=1e-13)


def test_hand_derived_formulas():
    # d^2/dt^2 [t^2 ln t] = 2 ln t + 3
    fn = parse("t^2*ln(t)")
    for t in (0.5, 1.0, 1.7):
        assert fn.deriv(t, 2) == pytest.approx(2 * math.log(t) + 3, rel=1e-14)
    # d/dt sqrt(1+t^2) = t/sqrt(1+t^2)
    fn = parse("sqrt(1+t^2)")
    for t in (-1.0, 0.0, 2.0):
        assert fn.deriv(t, 1) == pytest.approx(t / math.sqrt(1 + t * t), abs=1e-14)
    # fractional power: d/dt t^1.5 = 1.5 sqrt(t)
    fn = parse("t^1.5")
    assert fn.deriv(4.0, 1) == pytest.approx(3.0, rel=1e-14)
    # hyperbolics
    assert parse("sinh(t)").deriv(0.7, 2) == pytest.approx(math.sinh(0.7), rel=1e-14)
    assert parse("cosh(t)").deriv(0.7, 3) == pytest.approx(math.sinh(0.7), rel=1e-14)


def test_domain_errors():
    with pytest.raises(DomainError):
        parse("ln(t)")(-1.0)
    with pytest.raises(DomainError):
        parse("ln(t)").deriv(0.0, 1)
    with pytest.raises(DomainError):
        parse("1/t")(0.0)
    with pytest.raises(DomainError):
        parse("sqrt(t)")(-2.0)
    with pytest.raises(DomainError):
        parse("sqrt(t)").deriv(0.0, 1)
    with pytest.raises(DomainError):
        parse("t^0.5")(-1.0)


def test_order_cap():
    fn = parse("exp(t)")
    fn.deriv(0.0, MAX_ORDER)
    with pytest.raises(OrderOverflowError):
        fn.deriv(0.0, MAX_ORDER + 1)
    with pytest.raises(OrderOverflowError):
        fn.taylor(0.0, MAX_ORDER + 1)


def test_finite_difference_agreement():
    """deriv vs an independent FD oracle: 20 random points per (entry, k)."""
    rng = np.random.default_rng(20240809)
    for entry in corpus():
        lo, hi, steps = fd_setup(entry)
        for k in range(1, 7):
            xs = rng.uniform(lo, hi, size=20)
            exact = np.array([entry.fn.deriv(float(x), k) for x in xs])
            scale = max(float(np.max(np.abs(exact))), 1.0)
            for x, value in zip(xs, exact):
                approx = fd_derivative(entry.fn, float(x), k, steps[k])
                assert abs(approx - value) <= 1e-6 * max(abs(value), scale), (
                    entry.name,
                    k,
                    float(x),
                )


@given(
    alpha=st.floats(-3, 3, allow_nan=False),
    beta=st.floats(-3, 3, allow_nan=False),
    t0=st.floats(0.1, 2.0, allow_nan=False),
)
@settings(max_examples=60, deadline=None)
def test_linearity_of_jets(alpha, beta, t0):
    f = parse("exp(t)*cos(t)")
    g = parse("t^3 + sinh(t)")
    combined = parse(f"{alpha!r}*(exp(t)*cos(t)) + {beta!r}*(t^3 + sinh(t))")
    jf = f.taylor(t0, 6).coefficients
    jg = g.taylor(t0, 6).coefficients
    jc = combined.taylor(t0, 6).coefficients
    for cf, cg, cc in zip(jf, jg, jc):
        expected = alpha * cf + beta * cg
        assert abs(cc - expected) <= 1e-13 * max(1.0, abs(expected))


@given(t0=st.floats(0.2, 1.8, allow_nan=False))
@settings(max_examples=60, deadline=None)
def test_leibniz_cauchy_product(t0):
    f = parse("exp(t)")
    g = parse("1/(1+t)")
    product = parse("exp(t)/(1+t)")
    jf = list(f.taylor(t0, 6).coefficients)
    jg = list(g.taylor(t0, 6).coefficients)
    jp = product.taylor(t0, 6).coefficients
    cauchy = _jmul(jf, jg)
    for got, expected in zip(jp, cauchy):
        assert abs(got - expected) <= 1e-13 * max(1.0, abs(expected))


def test_grammar_unary_minus_binds_atom():
    # per the grammar, '^' applies to the signed atom: -t^2 == (-t)^2
    assert parse("-t^2")(3.0) == 9.0
    assert parse("0 - t^2")(3.0) == -9.0


def test_whitespace_insignificant():
    assert parse(" 1 +  2 * t ")(4.0) == parse("1+2*t")(4.0)


def test_scientific_literals():
    assert parse("1e-3 + 2.5E2*t")(1.0) == pytest.approx(250.001)


def test_expr_functions_hashable():
    assert parse("t^2") == parse("t^2")
    assert hash(parse("t^2")) == hash(parse("t^2"))
