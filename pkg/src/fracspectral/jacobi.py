"""Jacobi polynomials with real parameters and Gauss-Jacobi quadrature."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal

from .errors import ConvergenceError, InadmissibleParam
from .specfun import POLE_TOL, pochhammer

NEWTON_TOL = 1e-14
NEWTON_MAXIT = 100


@dataclass(frozen=True)
class JacobiParam:
    """Parameter pair (alpha, beta) of P_n^{(alpha, beta)}."""

    alpha: float
    beta: float

    def check_degree(self, n_max: int) -> None:
        """Raise InadmissibleParam unless P_1..P_{n_max} are genuine degree-n
        polynomials reachable by the three-term recurrence."""
        ab = self.alpha + self.beta
        r = round(ab)
        if n_max >= 1 and abs(ab - r) < POLE_TOL and r <= -2:
            raise InadmissibleParam(
                f"alpha+beta={ab} is a negative integer <= -2; "
                f"P_n^{{({self.alpha},{self.beta})}} degenerates for some n <= {n_max}"
            )
        for n in range(1, n_max):
            if abs(2 * n + ab) < 1e-10:
                raise InadmissibleParam(f"recurrence denominator 2n+alpha+beta vanishes at n={n}")

    def check_weight(self) -> None:
        if not (self.alpha > -1 and self.beta > -1):
            raise InadmissibleParam(
                f"weight (1-x)^{self.alpha}(1+x)^{self.beta} is not integrable"
            )


def _as_param(p) -> JacobiParam:
    if isinstance(p, JacobiParam):
        return p
    a, b = p
    return JacobiParam(float(a), float(b))


def _recurrence_coeffs(n: int, a: float, b: float) -> tuple[float, float, float]:
    # P_{n+1} = (an x - bn) P_n - cn P_{n-1}
    ab = a + b
    den = 2.0 * (n + 1) * (n + ab + 1)
    an = (2 * n + ab + 1) * (2 * n + ab + 2) / den
    bn = (b * b - a * a) * (2 * n + ab + 1) / (den * (2 * n + ab))
    cn = 2.0 * (n + a) * (n + b) * (2 * n + ab + 2) / (den * (2 * n + ab))
    return an, bn, cn


def jacobi_eval(p, n_max: int, x) -> np.ndarray:
    """P_0..P_{n_max} at x.

    Returns an array of shape ``(n_max + 1,) + np.shape(x)``.
    """
    p = _as_param(p)
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    p.check_degree(n_max)
    a, b = p.alpha, p.beta
    x = np.asarray(x, dtype=float)
    out = np.empty((n_max + 1,) + x.shape)
    out[0] = 1.0
    if n_max >= 1:
        out[1] = 0.5 * (a + b + 2) * x + 0.5 * (a - b)
    for n in range(1, n_max):
        an, bn, cn = _recurrence_coeffs(n, a, b)
        out[n + 1] = (an * x - bn) * out[n] - cn * out[n - 1]
    return out


def jacobi_top(p, n: int, x) -> np.ndarray:
    """P_n alone, without keeping lower degrees."""
    p = _as_param(p)
    p.check_degree(n)
    a, b = p.alpha, p.beta
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if n == 0:
        return prev
    cur = 0.5 * (a + b + 2) * x + 0.5 * (a - b)
    for m in range(1, n):
        am, bm, cm = _recurrence_coeffs(m, a, b)
        prev, cur = cur, (am * x - bm) * cur - cm * prev
    return cur


def _negative_integer(v: float) -> int:
    """k >= 1 if v == -k numerically, else 0."""
    r = round(v)
    return -r if r <= -1 and abs(v - r) < POLE_TOL else 0


def jacobi_eval_factored(p, n_max: int, x) -> np.ndarray:
    """Like jacobi_eval, but when one parameter is a negative integer the
    degrees at or above it are built from their factored form

        P_n^{(-l,b)} = d_n^{l,b} ((x-1)/2)^l P_{n-l}^{(l,b)}
        P_n^{(a,-m)} = d_n^{m,a} ((x+1)/2)^m P_{n-m}^{(a,m)}

    which keeps the endpoint zeros exact."""
    p = _as_param(p)
    a, b = p.alpha, p.beta
    l, m = _negative_integer(a), _negative_integer(b)
    if (l == 0) == (m == 0) or n_max < max(l, m):
        return jacobi_eval(p, n_max, x)
    x = np.asarray(x, dtype=float)
    out = np.empty((n_max + 1,) + x.shape)
    if l:
        k, other, fac = l, b, (x - 1) / 2
        high = jacobi_eval((l, b), n_max - l, x)
    else:
        k, other, fac = m, a, (x + 1) / 2
        high = jacobi_eval((a, m), n_max - m, x)
    if k > 0:
        out[:k] = jacobi_eval(p, k - 1, x)
    fk = fac**k
    for n in range(k, n_max + 1):
        out[n] = jacobi_negint_factorize(k, other, n) * fk * high[n - k]
    return out


def jacobi_series(p, coeffs, x) -> np.ndarray:
    """Sum_n coeffs[n] P_n(x)."""
    coeffs = np.asarray(coeffs, dtype=float)
    vals = jacobi_eval(p, len(coeffs) - 1, x)
    return np.tensordot(coeffs, vals, axes=1)


def jacobi_deriv_coeff(p, n: int, l: int) -> float:
    """kappa_{n,l}: D^l P_n^{(a,b)} = kappa * P_{n-l}^{(a+l,b+l)}."""
    p = _as_param(p)
    if not 0 <= l <= n:
        if l > n:
            return 0.0
        raise ValueError("derivative order must be >= 0")
    return pochhammer(n + p.alpha + p.beta + 1, l) / 2.0**l


def jacobi_eval_deriv(p, n_max: int, x, l: int = 1) -> np.ndarray:
    """l-th derivatives of P_0..P_{n_max} at x."""
    p = _as_param(p)
    x = np.asarray(x, dtype=float)
    out = np.zeros((n_max + 1,) + x.shape)
    if n_max < l:
        return out
    shifted = jacobi_eval((p.alpha + l, p.beta + l), n_max - l, x)
    for n in range(l, n_max + 1):
        out[n] = jacobi_deriv_coeff(p, n, l) * shifted[n - l]
    return out


def jacobi_norm_gamma(p, n: int) -> float:
    """gamma_n = int (P_n)^2 (1-x)^a (1+x)^b dx for a, b > -1."""
    p = _as_param(p)
    p.check_weight()
    a, b = p.alpha, p.beta
    ab = a + b
    if n == 0:
        # (ab+1) Gamma(ab+1) = Gamma(ab+2) keeps ab = -1 regular
        lv = (ab + 1) * math.log(2.0) + math.lgamma(a + 1) + math.lgamma(b + 1) - math.lgamma(ab + 2)
        return math.exp(lv)
    lv = (
        (ab + 1) * math.log(2.0)
        + math.lgamma(n + a + 1)
        + math.lgamma(n + b + 1)
        - math.log(2 * n + ab + 1)
        - math.lgamma(n + 1)
        - math.lgamma(n + ab + 1)
    )
    return math.exp(lv)


def jacobi_norms(p, n_max: int) -> np.ndarray:
    return np.array([jacobi_norm_gamma(p, n) for n in range(n_max + 1)])


def jacobi_negint_factorize(l: int, beta: float, n: int) -> float:
    """d_n^{l,beta} in P_n^{(-l,beta)} = d ((x-1)/2)^l P_{n-l}^{(l,beta)}."""
    if not (1 <= l <= n):
        raise ValueError("need 1 <= l <= n")
    return pochhammer(beta + n - l + 1, l) / pochhammer(n - l + 1, l)


def weight_mass(a: float, b: float) -> float:
    """int_{-1}^{1} (1-x)^a (1+x)^b dx = 2^{a+b+1} B(a+1, b+1)."""
    return math.exp(
        (a + b + 1) * math.log(2.0) + math.lgamma(a + 1) + math.lgamma(b + 1) - math.lgamma(a + b + 2)
    )


@dataclass(frozen=True)
class QuadRule:
    """Gauss-Jacobi rule for the weight (1-x)^alpha (1+x)^beta."""

    alpha: float
    beta: float
    nodes: np.ndarray
    weights: np.ndarray

    def __len__(self) -> int:
        return len(self.nodes)

    def integrate(self, values) -> np.ndarray:
        """Contract the last axis of ``values`` (sampled at the nodes) with the weights."""
        return np.asarray(values) @ self.weights


def _golub_welsch_nodes(a: float, b: float, M: int) -> np.ndarray:
    ab = a + b
    j = np.arange(M, dtype=float)
    diag = np.empty(M)
    diag[0] = (b - a) / (ab + 2)
    jj = j[1:]
    diag[1:] = (b * b - a * a) / ((2 * jj + ab) * (2 * jj + ab + 2))
    off = np.empty(M - 1)
    if M > 1:
        off[0] = 4 * (1 + a) * (1 + b) / ((2 + ab) ** 2 * (3 + ab))
        jj = np.arange(2, M, dtype=float)
        off[1:] = (
            4 * jj * (jj + a) * (jj + b) * (jj + ab)
            / ((2 * jj + ab) ** 2 * (2 * jj + ab + 1) * (2 * jj + ab - 1))
        )
    return eigvalsh_tridiagonal(diag, np.sqrt(off))


@lru_cache(maxsize=256)
def _gauss_jacobi_cached(a: float, b: float, M: int) -> QuadRule:
    # eigenvalues give starting points good to a few ulps times cond;
    # Newton on the recurrence then polishes them
    x = _golub_welsch_nodes(a, b, M)
    deriv_scale = 0.5 * (M + a + b + 1)
    for _ in range(NEWTON_MAXIT):
        pm = jacobi_top((a, b), M, x)
        dpm = deriv_scale * jacobi_top((a + 1, b + 1), M - 1, x)
        dx = pm / dpm
        x = x - dx
        if np.max(np.abs(dx)) <= NEWTON_TOL:
            break
    else:
        raise ConvergenceError(f"Gauss-Jacobi nodes ({a},{b}), M={M} did not converge")
    if np.any(np.abs(x) >= 1) or np.any(np.diff(x) <= 0):
        raise ConvergenceError("Gauss-Jacobi nodes left (-1,1) or lost ordering")
    dpm = deriv_scale * jacobi_top((a + 1, b + 1), M - 1, x)
    w = 1.0 / ((1 - x) * (1 + x) * dpm**2)
    # The constant in front of 1/((1-x^2) P_M'^2) is fixed by the zeroth
    # moment; for large M this is more accurate than its four log-gammas.
    w *= weight_mass(a, b) / math.fsum(w)
    x.setflags(write=False)
    w.setflags(write=False)
    return QuadRule(a, b, x, w)


def gauss_jacobi_rule(p, M: int) -> QuadRule:
    """M-point Gauss-Jacobi rule, exact for degree 2M-1 against the weight."""
    p = _as_param(p)
    p.check_weight()
    if M < 1:
        raise ValueError("M must be >= 1")
    return _gauss_jacobi_cached(float(p.alpha), float(p.beta), int(M))
