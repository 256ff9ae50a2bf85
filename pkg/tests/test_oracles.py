import mpmath
import pytest

from hyp43 import (
    CancellationLoss,
    EpsilonSchedule,
    IntegerDifference,
    Method,
    NotConverged,
    OutsideDomain,
    ParameterSet,
    SeriesControl,
    UnsupportedPattern,
    classify_pattern,
    epsilon_limit,
    generic_continuation,
    series_4f3,
)
from hyp43.oracles import epsilon_working_digits, perturbed_upper

CTL = SeriesControl.for_digits(30)
CTL40 = SeriesControl.for_digits(40)
B = ("2.7", "1.3", "1.9")


def rel(x, y, ctl=CTL):
    y = ctl.ctx.convert(y)
    return abs(x - y) / abs(y)


def test_series_at_zero():
    assert series_4f3(ParameterSet(("0.5", "1.5", "0.3", "0.8"), B), "0", CTL).value == 1


def test_series_reference():
    res = series_4f3(ParameterSet(("0.5", "1.5", "0.3", "0.8"), B), "-0.5", CTL40)
    assert rel(res.value, "0.9875490096531606391968389126444889699166", CTL40) < 1e-35
    assert res.method is Method.SERIES


def test_series_terminates_on_nonpositive_upper():
    # 4F3(-2, ...) is a quadratic polynomial in z
    params = ParameterSet(("-2", "0.5", "0.3", "0.8"), B)
    res = series_4f3(params, "-0.7", CTL)
    f = CTL.ctx.mp.mpf
    t1 = f(-2) * f("0.5") * f("0.3") * f("0.8") / (f("2.7") * f("1.3") * f("1.9"))
    t2 = t1 * f(-1) * f("1.5") * f("1.3") * f("1.8") / (f("3.7") * f("2.3") * f("2.9")) / 2
    z = f("-0.7")
    assert abs(res.value - (1 + t1 * z + t2 * z * z)) < 1e-28


@pytest.mark.parametrize("z", ["1", "-1.5", "0.6+0.8j"])
def test_series_outside_disc(z):
    with pytest.raises(OutsideDomain):
        series_4f3(ParameterSet(("0.5", "1.5", "0.3", "0.8"), B), z, CTL)


def test_series_not_converged():
    with pytest.raises(NotConverged):
        series_4f3(ParameterSet(("0.5", "1.7", "0.3", "0.8"), B), "-0.99", SeriesControl.for_digits(30, max_terms=50))


@pytest.mark.parametrize(
    "z, expected",
    [
        ("-5", "0.9099336301294755469145230047856319096964"),
    ],
)
def test_generic_reference(z, expected):
    res = generic_continuation(ParameterSet(("0.5", "1.7", "0.3", "0.8"), B), z, CTL40)
    assert rel(res.value, expected, CTL40) < 1e-35
    assert res.method is Method.GENERIC_CONTINUATION


def test_generic_matches_mpmath_off_axis():
    res = generic_continuation(ParameterSet(("0.5", "1.7", "0.3", "0.8"), B), "-3+4j", CTL)
    with mpmath.workdps(40):
        ref = mpmath.hyper(["0.5", "1.7", "0.3", "0.8"], list(B), mpmath.mpc(-3, 4))
    assert abs(res.value - ref) / abs(ref) < 1e-26


def test_generic_rejects_integer_difference():
    with pytest.raises(IntegerDifference):
        generic_continuation(ParameterSet(("0.5", "1.5", "0.3", "0.8"), B), "-5", CTL)


def test_schedule_validation():
    with pytest.raises(ValueError):
        EpsilonSchedule((1e-10, 1e-8))
    with pytest.raises(ValueError):
        EpsilonSchedule((1e-8,))
    EpsilonSchedule((1e-8,), extrapolate=False)
    with pytest.raises(ValueError):
        EpsilonSchedule((1e-8, 1e-12)).check_precision(30)
    EpsilonSchedule((1e-8, 1e-10)).check_precision(30)


def test_working_digits_grow_with_order():
    assert epsilon_working_digits(30, 1e-10, 2) == 60
    assert epsilon_working_digits(30, 1e-10, 4) == 70


def test_perturbation_keeps_differences_non_integer():
    pat = classify_pattern(("0.6", "0.6", "0.6", "0.6"))
    vals = perturbed_upper(pat, 1e-8, CTL.ctx)
    for i in range(4):
        for j in range(i + 1, 4):
            d = vals[j] - vals[i]
            assert abs(d - mpmath.nint(d.real)) > 1e-9


@pytest.mark.parametrize(
    "a, z, expected",
    [
        (("0.5", "1.5", "0.3", "0.8"), "-5", "0.9181311600241275726051653271343666676429"),
        (("0.6", "0.6", "0.6", "0.6"), "-4", None),
    ],
)
def test_epsilon_limit(a, z, expected):
    b = B if expected else ("1.4", "2.2", "0.85")
    params = ParameterSet(a, b)
    res = epsilon_limit(params, None, z, EpsilonSchedule((1e-8, 1e-10)), CTL)
    if expected is None:
        with mpmath.workdps(40):
            expected = mpmath.hyper(list(a), list(b), int(z))
    assert rel(res.value, expected) < 1e-8
    assert res.method is Method.EPSILON_LIMIT
    assert res.abs_err_estimate >= abs(res.value - CTL.ctx.convert(expected)) / 10


def test_epsilon_limit_cancellation_guard():
    params = ParameterSet(("0.6", "0.6", "0.6", "0.6"), ("1.4", "2.2", "0.85"))
    with pytest.raises(CancellationLoss):
        epsilon_limit(params, None, "-4", EpsilonSchedule((1e-4, 1e-6)), CTL)


def test_epsilon_limit_needs_cluster():
    with pytest.raises(UnsupportedPattern):
        epsilon_limit(ParameterSet(("0.5", "1.7", "0.3", "0.8"), B), None, "-5", None, CTL)


def test_unextrapolated_error_is_first_order():
    params = ParameterSet(("0.5", "1.5", "0.3", "0.8"), B)
    exact = CTL.ctx.convert("0.9181311600241275726051653271343666676429")
    errs = [abs(epsilon_limit(params, None, "-5", EpsilonSchedule((e,), extrapolate=False), CTL).value - exact)
            for e in (1e-6, 1e-7)]
    assert 8 <= errs[0] / errs[1] <= 12


@pytest.mark.parametrize("z", ["-2", "-5", "3+4j", "-40"])
def test_generic_term_budget(z):
    res = generic_continuation(ParameterSet(("0.5", "1.7", "0.3", "0.8"), B), z, CTL)
    limit = mpmath.ceil(30 / mpmath.log10(abs(CTL.ctx.convert(z)))) + 50
    assert res.terms_used <= limit
