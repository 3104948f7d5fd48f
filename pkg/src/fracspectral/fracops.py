"""Fractional integrals and derivatives on (-1, 1).

Closed-form rules for weighted Jacobi polynomials live next to brute-force
quadrature oracles. The oracles are meant for cross-checking only: they
map the weakly singular kernel onto a Gauss-Jacobi weight (exact for the
kernel itself) and take integer derivatives by central differences.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, InadmissibleParam
from .gjf import GjfLabel, Side
from .jacobi import JacobiParam, gauss_jacobi_rule, jacobi_eval
from .specfun import gamma_ratio, rgamma


@dataclass(frozen=True)
class FracOrder:
    """Order s with its integer ceiling k, s in [k-1, k)."""

    s: float

    def __post_init__(self):
        if not self.s >= 0:
            raise InadmissibleParam(f"order must be non-negative, got {self.s}")

    @property
    def k(self) -> int:
        return int(math.floor(self.s)) + 1


def _as_order(o) -> FracOrder:
    return o if isinstance(o, FracOrder) else FracOrder(float(o))


def frac_integral_quad(v: Callable, rho: float, x, side: Side, M: int = 32, sing: float = 0.0) -> np.ndarray:
    """I_-^rho v(x) (Side.LEFT) or I_+^rho v(x) (Side.RIGHT) by Gauss-Jacobi quadrature.

    ``sing`` declares an endpoint factor of v at the far end of the
    integration range: v(y) = (1-y)^sing g(y) for RIGHT, (1+y)^sing g(y)
    for LEFT, and the callable then returns g. The factor is folded into
    the quadrature weight, so g smooth gives spectral accuracy.
    """
    if not rho > 0:
        raise InadmissibleParam(f"rho must be positive, got {rho}")
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1):
        raise DomainError("x must lie in [-1, 1]")
    if side is Side.RIGHT:
        rule = gauss_jacobi_rule((sing, rho - 1), M)
        half = (1 - x) / 2
        y = x[..., None] + half[..., None] * (1 + rule.nodes)
    else:
        rule = gauss_jacobi_rule((rho - 1, sing), M)
        half = (1 + x) / 2
        y = -1 + half[..., None] * (1 + rule.nodes)
    vals = np.asarray(v(y), dtype=float)
    return half ** (rho + sing) * rgamma(rho) * (vals @ rule.weights)


def _central_weights(k: int) -> tuple[np.ndarray, np.ndarray]:
    """Offsets j and weights w with sum w_j F(x + j h) / h^k = F^{(k)}(x) + O(h^2)."""
    p = (k + 1) // 2
    j = np.arange(-p, p + 1, dtype=float)
    A = np.vander(j, increasing=True).T
    rhs = np.zeros(2 * p + 1)
    rhs[k] = math.factorial(k)
    return j, np.linalg.solve(A, rhs)


def frac_deriv_quad(
    v: Callable, ord, x, side: Side, M: int = 32, h: float = 1e-4, sing: float = 0.0
) -> np.ndarray:
    """Riemann-Liouville derivative oracle.

    D_-^s v = D^k I_-^{k-s} v and D_+^s v = (-1)^k D^k I_+^{k-s} v,
    with D^k from a second-order central stencil of step h.
    """
    order = _as_order(ord)
    s, k = order.s, order.k
    x = np.asarray(x, dtype=float)
    offs, w = _central_weights(k)
    if np.any(np.abs(x) > 1 - offs[-1] * h):
        raise DomainError(f"x too close to an endpoint for step h={h}")
    pts = x[..., None] + offs * h
    F = frac_integral_quad(v, k - s, pts, side, M, sing)
    out = (F @ w) / h**k
    return out if side is Side.LEFT else (-1) ** k * out


def caputo_deriv_quad(dkv: Callable, ord, x, side: Side, M: int = 32) -> np.ndarray:
    """Caputo derivative oracle from the k-th derivative ``dkv`` of v:
    I_-^{k-s} v^{(k)} (LEFT) or (-1)^k I_+^{k-s} v^{(k)} (RIGHT)."""
    order = _as_order(ord)
    s, k = order.s, order.k
    out = frac_integral_quad(dkv, k - s, x, side, M)
    return out if side is Side.LEFT else (-1) ** k * out


def rl_caputo_correction(v_boundary_derivs: Sequence[float], ord, x, side: Side) -> np.ndarray:
    """RL minus Caputo derivative of v, from v^{(j)} at the base point.

    LEFT:  sum_j v^{(j)}(-1) / G(1+j-s) (1+x)^{j-s}
    RIGHT: sum_j (-1)^j v^{(j)}(1) / G(1+j-s) (1-x)^{j-s}

    Terms with 1+j-s a non-positive integer drop out (1/Gamma = 0).
    """
    order = _as_order(ord)
    s, k = order.s, order.k
    if len(v_boundary_derivs) < k:
        raise ValueError(f"need {k} boundary derivatives, got {len(v_boundary_derivs)}")
    x = np.asarray(x, dtype=float)
    t = 1 + x if side is Side.LEFT else 1 - x
    out = np.zeros_like(t)
    for j in range(k):
        c = rgamma(1 + j - s)
        if c == 0.0 or v_boundary_derivs[j] == 0.0:
            continue
        sign = 1.0 if side is Side.LEFT else (-1.0) ** j
        out = out + sign * v_boundary_derivs[j] * c * t ** (j - s)
    return out


def bateman_integral(side: Side, rho: float, p, n: int) -> tuple[GjfLabel, float]:
    """Closed-form fractional integral of a weighted Jacobi polynomial.

    RIGHT: I_+^rho (1-x)^a P_n^{(a,b)} = G(n+a+1)/G(n+a+rho+1) (1-x)^{a+rho} P_n^{(a+rho,b-rho)}
    LEFT:  I_-^rho (1+x)^b P_n^{(a,b)} = G(n+b+1)/G(n+b+rho+1) (1+x)^{b+rho} P_n^{(a-rho,b+rho)}

    Returned as (image label, scale).
    """
    if not rho > 0:
        raise InadmissibleParam(f"rho must be positive, got {rho}")
    a, b = (p.alpha, p.beta) if isinstance(p, JacobiParam) else p
    if side is Side.RIGHT:
        if not a > -1:
            raise InadmissibleParam("right rule needs alpha > -1")
        return GjfLabel(Side.PLUS, a + rho, b - rho, n), gamma_ratio(n + a + 1, n + a + rho + 1)
    if not b > -1:
        raise InadmissibleParam("left rule needs beta > -1")
    return GjfLabel(Side.MINUS, a - rho, b + rho, n), gamma_ratio(n + b + 1, n + b + rho + 1)


def right_deriv_moments(dku: Callable, k: int, sigma: float, b: float, n_max: int, M: int) -> np.ndarray:
    """m_n = int D_+^sigma u(x) P_n^{(0,b)}(x) (1+x)^b dx, n = 0..n_max, for a
    smooth u whose first k-1 derivatives vanish at x = 1 (k-1 < sigma < k).

    Under that assumption D_+^sigma u = (-1)^k I_+^{k-sigma} u^{(k)}. Moving
    the fractional integral onto the polynomial side and using the left
    closed form

        I_-^r {(1+x)^b P_n^{(0,b)}} = G(n+b+1)/G(n+b+r+1) (1+x)^{b+r} P_n^{(-r,b+r)}

    leaves a smooth integrand against the weight (1+x)^{b+r}, so only u^{(k)}
    is ever sampled and no singular function is integrated.
    """
    r = k - sigma
    if not (0 < r <= 1):
        raise InadmissibleParam(f"order {sigma} does not match k={k}")
    if not b > -1:
        raise InadmissibleParam("weight exponent must exceed -1")
    rule = gauss_jacobi_rule((0.0, b + r), M)
    x = rule.nodes
    P = jacobi_eval((-r, b + r), n_max, x)
    raw = rule.integrate(P * np.asarray(dku(x), dtype=float))
    scale = np.array([gamma_ratio(n + b + 1, n + b + r + 1) for n in range(n_max + 1)])
    return (-1) ** k * scale * raw
