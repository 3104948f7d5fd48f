import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st
from scipy import integrate, special

from fracspectral.errors import InadmissibleParam
from fracspectral.jacobi import (
    JacobiParam,
    gauss_jacobi_rule,
    jacobi_deriv_coeff,
    jacobi_eval,
    jacobi_eval_deriv,
    jacobi_eval_factored,
    jacobi_negint_factorize,
    jacobi_norm_gamma,
    weight_mass,
)

params = st.floats(-0.95, 4.0)
grid = np.linspace(-1, 1, 41)


def test_p1_at_zero():
    a, b = 0.7, -0.2
    assert jacobi_eval((a, b), 1, 0.0)[1] == pytest.approx((a - b) / 2)


def test_legendre_at_one():
    np.testing.assert_allclose(jacobi_eval((0, 0), 2, 1.0), [1, 1, 1])


def test_endpoint_example():
    assert jacobi_eval((0.5, -0.3), 2, 1.0)[2] == pytest.approx(1.875, rel=1e-14)


def test_shape():
    x = np.zeros((3, 4))
    assert jacobi_eval((0.2, 0.1), 5, x).shape == (6, 3, 4)


@given(params, params)
def test_matches_scipy(a, b):
    vals = jacobi_eval((a, b), 15, grid)
    ref = np.array([special.eval_jacobi(n, a, b, grid) for n in range(16)])
    scale = np.max(np.abs(ref), axis=1, keepdims=True)
    assert np.max(np.abs(vals - ref) / scale) < 1e-11


@given(params, params)
def test_parity(a, b):
    x = np.linspace(-0.97, 0.99, 23)
    lhs = jacobi_eval((a, b), 20, x)
    rhs = jacobi_eval((b, a), 20, -x) * ((-1.0) ** np.arange(21))[:, None]
    scale = np.max(np.abs(lhs), axis=1, keepdims=True)
    assert np.max(np.abs(lhs - rhs) / scale) < 1e-11


@given(params, params)
def test_endpoint_value(a, b):
    vals = jacobi_eval((a, b), 20, 1.0)
    ref = np.array([special.poch(a + 1, n) / math.factorial(n) for n in range(21)])
    np.testing.assert_allclose(vals, ref, rtol=1e-11)


@pytest.mark.parametrize("a,b", [(-1.0, -1.0), (-1.5, -0.5), (1.0, -4.0)])
def test_degenerate_sum_rejected(a, b):
    with pytest.raises(InadmissibleParam):
        jacobi_eval((a, b), 3, 0.1)


def test_vanishing_recurrence_denominator_rejected():
    with pytest.raises(InadmissibleParam):
        JacobiParam(-0.5, -1.5).check_degree(4)


def test_deriv_coeff_examples():
    assert jacobi_deriv_coeff((0.3, 0.4), 5, 0) == 1.0
    assert jacobi_deriv_coeff((0, 0), 1, 1) == pytest.approx(1.0)
    assert jacobi_deriv_coeff((0, 0), 1, 2) == 0.0


@given(params, params, st.integers(1, 3))
def test_derivative_against_finite_differences(a, b, l):
    x = np.linspace(-0.8, 0.8, 9)
    h = 1e-3
    d = jacobi_eval_deriv((a, b), 8, x, l)
    if l == 1:
        fd = (jacobi_eval((a, b), 8, x + h) - jacobi_eval((a, b), 8, x - h)) / (2 * h)
    elif l == 2:
        fd = (jacobi_eval((a, b), 8, x + h) - 2 * jacobi_eval((a, b), 8, x) + jacobi_eval((a, b), 8, x - h)) / h**2
    else:
        f = lambda t: jacobi_eval((a, b), 8, t)
        fd = (f(x + 2 * h) - 2 * f(x + h) + 2 * f(x - h) - f(x - 2 * h)) / (2 * h**3)
    scale = max(np.max(np.abs(d)), 1.0)
    assert np.max(np.abs(d - fd)) / scale < 1e-4


def test_norm_examples():
    assert jacobi_norm_gamma((0, 0), 0) == pytest.approx(2.0)
    for n in range(6):
        assert jacobi_norm_gamma((0, 1), n) == pytest.approx(2 / (n + 1), rel=1e-14)
    assert jacobi_norm_gamma((0.5, 0.5), 0) == pytest.approx(math.pi / 2, rel=1e-14)


def test_norm_rejects_bad_weight():
    with pytest.raises(InadmissibleParam):
        jacobi_norm_gamma((-1.2, 0.0), 2)


def test_negint_examples():
    assert jacobi_negint_factorize(1, 0.0, 1) == pytest.approx(1.0)
    assert jacobi_negint_factorize(2, 0.5, 3) == pytest.approx(35 / 24)


@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 6))
def test_negint_product_identity(l, m, extra):
    n = l + m + extra
    assert jacobi_negint_factorize(l, -m, n) * jacobi_negint_factorize(m, l, n - l) == pytest.approx(1.0, rel=1e-13)


def _degenerate(a, b):
    # the plain recurrence loses accuracy near the degenerate sums it rejects
    ab = a + b
    return (ab < -1.5 and abs(ab - round(ab)) < 0.05) or any(abs(2 * n + ab) < 0.05 for n in range(1, 11))


@given(st.integers(1, 3), st.floats(-0.9, 3.0))
def test_negint_factorization_left(l, b):
    assume(not _degenerate(-l, b))
    x = np.linspace(-1, 1, 17)
    direct = jacobi_eval((-l, b), 10, x)
    high = jacobi_eval((l, b), 10 - l, x)
    for n in range(l, 11):
        fac = jacobi_negint_factorize(l, b, n) * ((x - 1) / 2) ** l * high[n - l]
        np.testing.assert_allclose(direct[n], fac, atol=1e-10 * max(1, np.max(np.abs(fac))))


@given(st.integers(1, 3), st.floats(-0.9, 3.0))
def test_negint_factorization_right(m, a):
    assume(not _degenerate(a, -m))
    x = np.linspace(-1, 1, 17)
    fac = jacobi_eval_factored((a, -m), 10, x)
    direct = jacobi_eval((a, -m), 10, x)
    high = jacobi_eval((a, m), 10 - m, x)
    for n in range(m, 11):
        expect = jacobi_negint_factorize(m, a, n) * ((x + 1) / 2) ** m * high[n - m]
        np.testing.assert_allclose(fac[n], expect, atol=1e-12 * max(1, np.max(np.abs(expect))))
        np.testing.assert_allclose(direct[n], expect, atol=1e-10 * max(1, np.max(np.abs(expect))))
    # the factored form keeps the endpoint zero exact
    assert np.all(fac[m:, 0] == 0.0)


def test_two_point_legendre():
    r = gauss_jacobi_rule((0, 0), 2)
    np.testing.assert_allclose(r.nodes, [-1 / math.sqrt(3), 1 / math.sqrt(3)], rtol=1e-15)
    np.testing.assert_allclose(r.weights, [1, 1], rtol=1e-14)


@given(params, params, st.integers(1, 200))
def test_rule_structure(a, b, M):
    r = gauss_jacobi_rule((a, b), M)
    assert len(r) == M
    assert np.all(np.diff(r.nodes) > 0)
    assert np.all(np.abs(r.nodes) < 1)
    assert np.all(r.weights > 0)
    assert r.weights.sum() == pytest.approx(weight_mass(a, b), rel=1e-12)


def test_x14_example():
    r = gauss_jacobi_rule((0.5, -0.5), 8)
    got = r.integrate(r.nodes**14)
    # x = cos(t) turns the integral into int_0^pi cos^14 (1 - cos) dt; the odd part drops
    ref = math.pi * math.comb(14, 7) / 2**14
    quad_ref, _ = integrate.quad(lambda t: np.cos(t) ** 14 * (1 - np.cos(t)), 0, np.pi, epsabs=1e-14)
    assert quad_ref == pytest.approx(ref, rel=1e-12)
    assert got == pytest.approx(ref, rel=1e-12)


@given(params, params, st.integers(2, 30))
def test_discrete_orthogonality(a, b, M):
    r = gauss_jacobi_rule((a, b), M)
    n_max = M - 1
    P = jacobi_eval((a, b), n_max, r.nodes)
    G = (P * r.weights) @ P.T
    gam = np.array([jacobi_norm_gamma((a, b), n) for n in range(n_max + 1)])
    err = np.abs(G - np.diag(gam)) / np.sqrt(np.outer(gam, gam))
    assert np.max(err) < 1e-10


@given(params, params, st.integers(3, 40))
def test_node_count_independence(a, b, M):
    rng = np.random.default_rng(M)
    c = rng.standard_normal(2 * M)
    f = lambda x: np.polynomial.polynomial.polyval(x, c)
    r1 = gauss_jacobi_rule((a, b), M)
    r2 = gauss_jacobi_rule((a, b), 2 * M)
    v1, v2 = r1.integrate(f(r1.nodes)), r2.integrate(f(r2.nodes))
    assert abs(v1 - v2) < 1e-12 * max(1.0, np.sum(np.abs(c)) * weight_mass(a, b))


def test_rule_is_read_only_and_cached():
    r = gauss_jacobi_rule((0.3, 0.2), 10)
    assert gauss_jacobi_rule(JacobiParam(0.3, 0.2), 10) is r
    with pytest.raises(ValueError):
        r.nodes[0] = 0.0


def test_rule_rejects_nonintegrable_weight():
    with pytest.raises(InadmissibleParam):
        gauss_jacobi_rule((-1.0, 0.0), 5)
