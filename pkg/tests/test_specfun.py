import math

import mpmath
import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from fracspectral.errors import PoleError
from fracspectral.specfun import SignedLogValue, gamma_ratio, is_pole, log_gamma, pochhammer, rgamma


def test_log_gamma_examples():
    v = log_gamma(5)
    assert v.sign == 1 and v.log_abs == pytest.approx(math.log(24), rel=1e-14)
    v = log_gamma(0.5)
    assert v.sign == 1 and v.log_abs == pytest.approx(0.5 * math.log(math.pi), rel=1e-14)
    v = log_gamma(-1.5)
    assert v.sign == 1
    assert v.value == pytest.approx(4 * math.sqrt(math.pi) / 3, rel=1e-14)


def test_log_gamma_negative_signs():
    # Gamma alternates sign between consecutive negative integers
    assert log_gamma(-0.5).sign == -1
    assert log_gamma(-2.5).sign == -1
    assert log_gamma(-3.5).sign == 1


@pytest.mark.parametrize("x", [0, -1, -7, -2 + 1e-14])
def test_log_gamma_poles(x):
    assert is_pole(x)
    with pytest.raises(PoleError):
        log_gamma(x)


def test_pole_error_is_arithmetic():
    assert issubclass(PoleError, ArithmeticError)


@given(st.floats(-30, 60).filter(lambda x: not is_pole(x) and abs(x - round(x)) > 1e-6))
def test_log_gamma_against_mpmath(x):
    ref = mpmath.gamma(x)
    v = log_gamma(x)
    assert v.sign == (1 if ref > 0 else -1)
    assert v.log_abs == pytest.approx(float(mpmath.log(abs(ref))), rel=1e-13, abs=1e-13)


def test_gamma_ratio_examples():
    assert gamma_ratio(5, 3) == pytest.approx(12, rel=1e-14)
    assert gamma_ratio(2.3, 2.3) == 1.0
    assert gamma_ratio(3.7, 1.7) == pytest.approx(2.7 * 1.7, rel=1e-13)


def test_gamma_ratio_poles():
    assert gamma_ratio(0.5, -2) == 0.0
    with pytest.raises(PoleError):
        gamma_ratio(-3, 0.5)
    # both poles: the limit of G(-2+e)/G(-4+e)
    # G(-2+e)/G(-4+e) = (-4+e)(-3+e) -> 12
    assert gamma_ratio(-2, -4) == pytest.approx(12.0, rel=1e-12)


def test_gamma_ratio_large_arguments():
    # G(n+s+1)/n! for n in the thousands, where each Gamma overflows
    n, s = 5000, 0.7
    ref = mpmath.gamma(n + s + 1) / mpmath.factorial(n)
    assert gamma_ratio(n + s + 1, n + 1) == pytest.approx(float(ref), rel=1e-11)


@given(st.floats(-8, 8), st.floats(-8, 8))
def test_gamma_ratio_against_mpmath(a, b):
    assume(not is_pole(a) and not is_pole(b))
    assume(min(abs(a - round(a)), abs(b - round(b))) > 1e-6)
    ref = float(mpmath.gamma(a) / mpmath.gamma(b))
    assert gamma_ratio(a, b) == pytest.approx(ref, rel=1e-12)


def test_pochhammer_examples():
    assert pochhammer(3.3, 0) == 1.0
    assert pochhammer(-2, 3) == 0.0
    assert pochhammer(1.5, 2) == pytest.approx(3.75)


def test_rgamma_is_zero_at_poles():
    assert rgamma(-3) == 0.0
    assert rgamma(0.5) == pytest.approx(1 / math.sqrt(math.pi))


def test_signed_log_value_reconstructs():
    v = SignedLogValue(math.log(3.0), -1)
    assert v.value == pytest.approx(-3.0)
    assert (v * v).value == pytest.approx(9.0)
    assert (v / v).value == pytest.approx(1.0)


@pytest.mark.parametrize("x", np.linspace(0.5, 40, 80))
def test_recurrence_property(x):
    lhs = math.exp(log_gamma(x + 1).log_abs)
    rhs = x * math.exp(log_gamma(x).log_abs)
    assert lhs == pytest.approx(rhs, rel=1e-13)


@given(st.floats(0.5, 1e6))
def test_recurrence_property_log_space(x):
    # exp() turns the absolute error of a large log into relative error, so
    # compare logs for big arguments
    diff = log_gamma(x + 1).log_abs - log_gamma(x).log_abs
    assert diff == pytest.approx(math.log(x), rel=1e-13, abs=1e-13 * max(1.0, abs(log_gamma(x + 1).log_abs)))


@given(st.floats(0.01, 30), st.integers(0, 8))
def test_ratio_matches_pochhammer(a, j):
    assert gamma_ratio(a + j, a) == pytest.approx(pochhammer(a, j), rel=1e-12)


@given(st.floats(-5, 5).filter(lambda x: abs(x - round(x)) > 1e-3))
def test_reflection(x):
    lhs = log_gamma(x).value * log_gamma(1 - x).value
    assert lhs == pytest.approx(math.pi / math.sin(math.pi * x), rel=1e-12)
