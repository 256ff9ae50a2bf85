from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyp43 import (
    GammaBracketSpec,
    NumeratorPole,
    PoleArgument,
    PrecisionContext,
    gamma_bracket,
    hurwitz_zeta,
    log_gamma,
    polygamma,
)
from hyp43.numerics import integer_distance, nearest_integer, parse_scalar, recip_gamma

CTX = PrecisionContext(30)
TOL = mpmath.mpf("1e-28")


def close(x, y, tol=TOL):
    y = CTX.convert(y)
    return abs(x - y) <= tol * max(1, abs(y))


def test_precision_context_rejects_low_digits():
    with pytest.raises(ValueError):
        PrecisionContext(10)
    with pytest.raises(ValueError):
        PrecisionContext(30.5)


@pytest.mark.parametrize(
    "text, expected",
    [("1.5", 1.5), ("-3-4i", -3 - 4j), ("2i", 2j), ("-i", -1j), ("1e-3+2.5j", 0.001 + 2.5j), ("0.45j", 0.45j)],
)
def test_parse_scalar(text, expected):
    assert complex(parse_scalar(text, CTX)) == pytest.approx(expected)


@pytest.mark.parametrize("text", ["", "abc", "1+", "3+4k", "(-0.5+0j)"])
def test_parse_scalar_rejects(text):
    with pytest.raises(ValueError):
        parse_scalar(text, CTX)


def test_nearest_integer_is_strict():
    assert nearest_integer(mpmath.mpf(3) + mpmath.mpf("1e-12")) == 3
    assert nearest_integer(mpmath.mpf(3) + mpmath.mpf("1e-9")) is None
    assert integer_distance(mpmath.mpc("2.25", "0")) == pytest.approx(0.25)


@pytest.mark.parametrize(
    "x, expected",
    [("1", "0"), ("0.5", "0.57236494292470008707171367567652935582364740645766")],
)
def test_log_gamma_values(x, expected):
    assert close(log_gamma(x, CTX), expected)


def test_log_gamma_recurrence():
    assert close(log_gamma("7.3", CTX), log_gamma("6.3", CTX) + CTX.mp.log(CTX.convert("6.3")))
    assert close(log_gamma("7.3", CTX), "7.147892523022249032777057154428389202453")


def test_log_gamma_principal_branch():
    # the imaginary part jumps across the negative real axis
    above = log_gamma("-2.5+1e-20j", CTX)
    below = log_gamma("-2.5-1e-20j", CTX)
    assert close(above.imag - below.imag, -6 * CTX.mp.pi, mpmath.mpf("1e-15"))


@pytest.mark.parametrize("x", ["0", "-3", "-1+1e-12j"])
def test_log_gamma_poles(x):
    with pytest.raises(PoleArgument):
        log_gamma(x, CTX)


@pytest.mark.parametrize(
    "x, expected",
    [("0", "0"), ("-3", "0"), ("2.5", "0.75225277806367504925")],
)
def test_recip_gamma(x, expected):
    assert abs(recip_gamma(x, CTX) - CTX.convert(expected)) < 1e-19


@pytest.mark.parametrize(
    "order, x, expected",
    [
        (0, "1", "-0.57721566490153286060651209008240243104215933593992"),
        (1, "1", "1.6449340668482264364724151666460251892189499012068"),
        (2, "2", "-0.40411380631918857079947632302289998152997258468101"),
    ],
)
def test_polygamma_values(order, x, expected):
    assert close(polygamma(order, x, CTX), expected)


@pytest.mark.parametrize("x", ["0.3", "-2.7", "15.25", "3+4j", "-7.5-2j", "1e-3", "120.5"])
@pytest.mark.parametrize("order", [0, 1, 2])
def test_polygamma_matches_mpmath(order, x):
    with mpmath.workdps(50):
        ref = mpmath.psi(order, PrecisionContext(40).convert(x))
    assert close(polygamma(order, x, CTX), ref)


def test_polygamma_finite_difference():
    # d/dx psi^(k) = psi^(k+1), checked by a central difference at high precision
    ctx = PrecisionContext(60)
    h = ctx.mp.mpf("1e-15")
    for x in ("0.7", "2.3+1.1j"):
        x = ctx.convert(x)
        for k in (0, 1):
            fd = (polygamma(k, x + h, ctx) - polygamma(k, x - h, ctx)) / (2 * h)
            assert abs(fd - polygamma(k + 1, x, ctx)) < 1e-25


def test_polygamma_pole():
    with pytest.raises(PoleArgument):
        polygamma(0, "-2", CTX)


@pytest.mark.parametrize(
    "s, nu, expected",
    [
        (2, "1", "1.6449340668482264364724151666460251892189499012068"),
        (2, "3", "0.39493406684822643647241516664602518921894990120680"),
        (3, "2", "0.20205690315959428539973816151144999076498629234050"),
    ],
)
def test_hurwitz_zeta_values(s, nu, expected):
    assert close(hurwitz_zeta(s, nu, CTX), expected)


@pytest.mark.parametrize("s", [2, 3])
@pytest.mark.parametrize("nu", ["0.35", "4.5", "-3.25", "2-1.5j"])
def test_hurwitz_zeta_polygamma_relation(s, nu):
    rel = polygamma(s - 1, nu, CTX) * (-1) ** s / CTX.mp.factorial(s - 1)
    assert close(hurwitz_zeta(s, nu, CTX), rel)


@pytest.mark.parametrize(
    "num, den, expected",
    [((1, 1, 1, 1), (1, 1, 1), 1), ((2, 3), (4,), Fraction(1, 3)), ((1,), (0,), 0), ((1, "0.5"), ("1.5",), 2)],
)
def test_gamma_bracket(num, den, expected):
    value = gamma_bracket(GammaBracketSpec(num, den), CTX)
    assert close(value, expected)


def test_gamma_bracket_numerator_pole():
    with pytest.raises(NumeratorPole):
        gamma_bracket(GammaBracketSpec(("-1",), ("2",)), CTX)


def test_gamma_bracket_pole_tolerance():
    near = CTX.convert("-1") + CTX.mp.mpf("1e-12")
    with pytest.raises(NumeratorPole):
        gamma_bracket(GammaBracketSpec((near,), ()), CTX)
    value = gamma_bracket(GammaBracketSpec((near,), ()), CTX, pole_tol=1e-300)
    assert abs(value + CTX.mp.mpf("1e12")) < 1e3


@settings(max_examples=60, deadline=None)
@given(st.floats(min_value=-20, max_value=40), st.floats(min_value=-10, max_value=10))
def test_digamma_recurrence_property(re, im):
    x = CTX.convert(complex(re, im))
    if integer_distance(x) < 1e-3 or integer_distance(x + 1) < 1e-3:
        return
    assert close(polygamma(0, x + 1, CTX), polygamma(0, x, CTX) + 1 / x, mpmath.mpf("1e-25"))


@pytest.mark.parametrize("x", ["0.7", "3.25", "2-1j"])
def test_log_gamma_finite_difference(x):
    h = CTX.mp.mpf(10) ** -10
    x = CTX.convert(x)
    fd = (log_gamma(x + h, CTX) - log_gamma(x - h, CTX)) / (2 * h)
    assert abs(fd - polygamma(0, x, CTX)) < 1e-18


@pytest.mark.parametrize("x", ["0.3", "7.5", "-2.5+0.5j"])
def test_single_numerator_bracket(x):
    assert close(gamma_bracket(GammaBracketSpec((x,), ()), CTX), CTX.mp.exp(log_gamma(x, CTX)))


def test_determinism():
    assert polygamma(2, "0.37+2j", CTX) == polygamma(2, "0.37+2j", CTX)
    assert hurwitz_zeta(3, "4.1", CTX) == hurwitz_zeta(3, "4.1", CTX)
