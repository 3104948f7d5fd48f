"""Generalized Jacobi functions (GJFs).

Two families, both indexed here by the parameters of the Jacobi factor:

    Plus(alpha, beta, n)  = (1-x)^alpha P_n^{(alpha,beta)}(x),   alpha > -1
    Minus(alpha, beta, n) = (1+x)^beta  P_n^{(alpha,beta)}(x),   beta > -1

In the usual superscript notation Plus(a, b) is written with (-a, b) and
Minus(a, b) with (a, -b). The right-sided operators (I_+, D_+) act
naturally on the Plus family and the left-sided ones on the Minus family.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Callable, Optional

import numpy as np

from .errors import DomainError, FamilyMismatch, InadmissibleParam
from .jacobi import (
    JacobiParam,
    gauss_jacobi_rule,
    jacobi_deriv_coeff,
    jacobi_eval,
    jacobi_eval_factored,
    jacobi_negint_factorize,
    jacobi_norm_gamma,
)
from .specfun import POLE_TOL, gamma_ratio

QUAD_EXTRA = 16


class Side(Enum):
    """Plus/right (weight at x = 1) or Minus/left (weight at x = -1)."""

    PLUS = "+"
    MINUS = "-"
    RIGHT = "+"
    LEFT = "-"

    @property
    def other(self) -> "Side":
        return Side.MINUS if self is Side.PLUS else Side.PLUS


def _int_param(v: float) -> Optional[int]:
    r = round(v)
    return int(r) if abs(v - r) < POLE_TOL else None


@dataclass(frozen=True)
class GjfFamily:
    """The set {Plus(alpha, beta, n)}_n or {Minus(alpha, beta, n)}_n."""

    side: Side
    alpha: float
    beta: float

    def __post_init__(self):
        if self.side is Side.PLUS and not self.alpha > -1:
            raise InadmissibleParam(f"Plus family needs alpha > -1, got {self.alpha}")
        if self.side is Side.MINUS and not self.beta > -1:
            raise InadmissibleParam(f"Minus family needs beta > -1, got {self.beta}")

    @property
    def jacobi(self) -> JacobiParam:
        return JacobiParam(self.alpha, self.beta)

    @property
    def exponent(self) -> float:
        """Exponent of the endpoint prefactor."""
        return self.alpha if self.side is Side.PLUS else self.beta

    def label(self, n: int) -> "GjfLabel":
        return GjfLabel(self.side, self.alpha, self.beta, n)

    def mirrored(self) -> "GjfFamily":
        """Family g with f_n(x) = (-1)^n g_n(-x)."""
        return GjfFamily(self.side.other, self.beta, self.alpha)

    def prefactor(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if np.any(np.abs(x) > 1):
            raise DomainError("GJFs live on [-1, 1]")
        e = self.exponent
        t = 1 - x if self.side is Side.PLUS else 1 + x
        at_end = t == 0
        if np.any(at_end) and e < 0:
            raise DomainError(f"prefactor with exponent {e} is singular at the endpoint")
        out = np.empty_like(t)
        inside = ~at_end
        out[inside] = np.exp(e * np.log(t[inside]))
        out[at_end] = 0.0 if e > 0 else 1.0
        return out


@dataclass(frozen=True)
class GjfLabel:
    side: Side
    alpha: float
    beta: float
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("degree must be >= 0")

    @property
    def family(self) -> GjfFamily:
        return GjfFamily(self.side, self.alpha, self.beta)


def gjf_eval_all(family: GjfFamily, N: int, x) -> np.ndarray:
    """Values of degrees 0..N; shape ``(N + 1,) + np.shape(x)``."""
    pre = family.prefactor(x)
    return jacobi_eval_factored(family.jacobi, N, x) * pre


def gjf_eval(label: GjfLabel, x) -> np.ndarray:
    return gjf_eval_all(label.family, label.n, x)[label.n]


def gjf_series(family: GjfFamily, coeffs, x, start: int = 0) -> np.ndarray:
    """Sum_{n >= start} coeffs[n - start] * family_n(x)."""
    coeffs = np.asarray(coeffs, dtype=float)
    N = start + len(coeffs) - 1
    vals = gjf_eval_all(family, N, x)[start:]
    return np.tensordot(coeffs, vals, axes=1)


# ---------------------------------------------------------------------------
# closed-form fractional calculus


def gjf_rl_deriv(label: GjfLabel, s: float) -> tuple[GjfLabel, float]:
    """Riemann-Liouville derivative of order s of a GJF, in closed form.

    Plus:  D_+^s Plus(a, b, n)  = G(n+a+1)/G(n+a-s+1) Plus(a-s, b+s, n),  a > s-1
    Minus: D_-^s Minus(a, b, n) = G(n+b+1)/G(n+b-s+1) Minus(a+s, b-s, n), b > s-1
    """
    n = label.n
    if label.side is Side.PLUS:
        if not label.alpha > s - 1:
            raise InadmissibleParam(f"D_+^{s} needs alpha > s-1, got alpha={label.alpha}")
        scale = gamma_ratio(n + label.alpha + 1, n + label.alpha - s + 1)
        return GjfLabel(Side.PLUS, label.alpha - s, label.beta + s, n), scale
    if not label.beta > s - 1:
        raise InadmissibleParam(f"D_-^{s} needs beta > s-1, got beta={label.beta}")
    scale = gamma_ratio(n + label.beta + 1, n + label.beta - s + 1)
    return GjfLabel(Side.MINUS, label.alpha + s, label.beta - s, n), scale


def gjf_caputo_deriv(label: GjfLabel, s: float, k: int) -> tuple[GjfLabel, float]:
    """Caputo derivative; equals the RL one when the GJF's first k-1
    derivatives vanish at the base point, i.e. for exponent > k-1."""
    if not (k - 1 <= s < k):
        raise ValueError(f"order {s} is not in [{k - 1}, {k})")
    e = label.alpha if label.side is Side.PLUS else label.beta
    if not e > k - 1:
        raise InadmissibleParam(f"Caputo formula needs exponent > {k - 1}, got {e}")
    return gjf_rl_deriv(label, s)


def gjf_sl_eigenvalue(alpha: float, beta: float, s: float, n: int) -> float:
    """Eigenvalue of  w^{(a,-b)} D_-^s { w^{(s-a, b+s)} D_+^s u }  on Plus(a, b, n)."""
    if not (alpha > s - 1 and beta > -1):
        raise InadmissibleParam("eigenrelation needs alpha > s-1 and beta > -1")
    return gamma_ratio(n + alpha + 1, n + alpha - s + 1) * gamma_ratio(n + beta + s + 1, n + beta + 1)


def weight(a: float, b: float, x) -> np.ndarray:
    """(1-x)^a (1+x)^b at interior points."""
    x = np.asarray(x, dtype=float)
    return np.exp(a * np.log1p(-x) + b * np.log1p(x))


def sl_apply(label: GjfLabel, s: float, x) -> np.ndarray:
    """Apply the fractional Sturm-Liouville operator to Plus(a, b, n) at
    interior points by chaining closed forms:

        D_+^s          Plus(a, b)      -> Plus(a-s, b+s)
        * w^{(s-a,b+s)}                -> Minus(a-s, b+s)   (same Jacobi factor)
        D_-^s          Minus(a-s, b+s) -> Minus(a, b)
        * w^{(a,-b)}                   -> Plus(a, b)

    The first weight multiplication is an exact relabelling (the prefactors
    combine into the Minus one); the last is carried out pointwise.
    """
    if label.side is not Side.PLUS:
        raise ValueError("sl_apply is written for the Plus family")
    a, b = label.alpha, label.beta
    first, c1 = gjf_rl_deriv(label, s)
    relabeled = GjfLabel(Side.MINUS, first.alpha, first.beta, label.n)
    second, c2 = gjf_rl_deriv(relabeled, s)
    outer = c1 * c2 * gjf_eval(second, x)
    return outer * weight(a, -b, x)


def frac_deriv_image(alpha: float, beta: float, n: int, l: int = 0) -> tuple[JacobiParam, int, float]:
    """D_+^{alpha+l} Plus(alpha, beta, n) = scale * P_{n-l}^{(l, alpha+beta+l)}.

    Returns (param, degree, scale); scale is 0 when n < l.
    """
    if not alpha > -1:
        raise InadmissibleParam("alpha must exceed -1")
    ab = alpha + beta
    if n < l:
        return JacobiParam(l, ab + l), 0, 0.0
    scale = (-1.0) ** l * gamma_ratio(n + alpha + 1, n + 1) * jacobi_deriv_coeff((0.0, ab), n, l)
    return JacobiParam(l, ab + l), n - l, scale


# ---------------------------------------------------------------------------
# norms


def _case(alpha: float, beta: float) -> str:
    k = _int_param(beta)
    if k is not None and k <= -1:
        return "II"
    if beta > -1:
        return "I"
    return "III"


def gjf_norm(alpha: float, beta: float, n: int) -> float:
    """int Plus(a,b,n)^2 w^{(-a,b)} dx for Cases I and II (n >= k in Case II)."""
    case = _case(alpha, beta)
    if case == "I":
        return jacobi_norm_gamma((alpha, beta), n)
    if case == "II":
        k = -_int_param(beta)
        if n < k:
            raise InadmissibleParam(f"degree {n} is below the start index {k}")
        d = jacobi_negint_factorize(k, alpha, n)
        return 4.0**-k * d * d * jacobi_norm_gamma((alpha, k), n - k)
    raise InadmissibleParam("the Plus family is not orthogonal for -alpha-1 < beta < -1")


def mu_const(ab: float, n: int, m: int) -> float:
    """int (D^m P_n^{(0,ab)})^2 w^{(m, ab+m)} dx."""
    if n < m:
        return 0.0
    kap = jacobi_deriv_coeff((0.0, ab), n, m)
    return kap * kap * jacobi_norm_gamma((m, ab + m), n - m)


def h_const(alpha: float, beta: float, n: int, l: int = 0) -> float:
    """int (D_+^{alpha+l} Plus(alpha,beta,n))^2 w^{(l, alpha+beta+l)} dx."""
    g = gamma_ratio(n + alpha + 1, n + 1)
    return g * g * mu_const(alpha + beta, n, l)


@dataclass(frozen=True)
class CoeffVector:
    """Coefficients of sum_{n=start}^{N} c[n-start] * family_n."""

    family: GjfFamily
    start: int
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=float)
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        if self.start < 0:
            raise ValueError("start must be >= 0")

    @property
    def N(self) -> int:
        return self.start + len(self.coeffs) - 1

    def degrees(self) -> np.ndarray:
        return np.arange(self.start, self.N + 1)

    def dense(self, N: Optional[int] = None) -> np.ndarray:
        """Coefficients for degrees 0..N with zeros outside the stored range."""
        N = self.N if N is None else N
        out = np.zeros(N + 1)
        top = min(N, self.N)
        if top >= self.start:
            out[self.start : top + 1] = self.coeffs[: top - self.start + 1]
        return out

    def __call__(self, x) -> np.ndarray:
        return gjf_series(self.family, self.coeffs, x, self.start)

    def _check(self, other: "CoeffVector") -> None:
        if other.family != self.family:
            raise FamilyMismatch(f"{self.family} vs {other.family}")

    def __sub__(self, other: "CoeffVector") -> "CoeffVector":
        self._check(other)
        N = max(self.N, other.N)
        start = min(self.start, other.start)
        return CoeffVector(self.family, start, (self.dense(N) - other.dense(N))[start:])

    def __add__(self, other: "CoeffVector") -> "CoeffVector":
        self._check(other)
        N = max(self.N, other.N)
        start = min(self.start, other.start)
        return CoeffVector(self.family, start, (self.dense(N) + other.dense(N))[start:])

    def __rmul__(self, a: float) -> "CoeffVector":
        return replace(self, coeffs=a * self.coeffs)


def gjf_coeff_norms(c: CoeffVector, alpha: float, beta: float, l: int = 0) -> float:
    """Norm of the function represented by c, from its coefficients only.

    l >= 0: ||D_+^{alpha+l} u|| in L^2 with weight (1-x)^l (1+x)^{alpha+beta+l}
    l = -1: ||u|| in L^2 with weight (1-x)^{-alpha} (1+x)^beta (Cases I/II)

    For the Minus family the mirrored quantities are returned.
    """
    fam = c.family
    plus = (alpha, beta) if fam.side is Side.PLUS else (beta, alpha)
    if (fam.alpha, fam.beta) != (alpha, beta):
        raise FamilyMismatch(f"coefficients belong to {fam}, not ({alpha}, {beta})")
    a, b = plus
    total = 0.0
    for n, cn in zip(c.degrees(), c.coeffs):
        if cn == 0.0:
            continue
        if l == -1:
            total += gjf_norm(a, b, int(n)) * cn * cn
        elif n >= l:
            total += h_const(a, b, int(n), l) * cn * cn
    return math.sqrt(total)


# ---------------------------------------------------------------------------
# projections


def _check_upsilon(alpha: float, beta: float) -> None:
    if not (alpha > 0 and alpha + beta > -1):
        raise InadmissibleParam(f"projection needs alpha > 0 and alpha+beta > -1, got ({alpha}, {beta})")


def gjf_project(
    f: Callable,
    side: Side,
    alpha: float,
    beta: float,
    N: int,
    *,
    frac_deriv: Optional[Callable] = None,
    quad_extra: int = QUAD_EXTRA,
) -> CoeffVector:
    """Orthogonal (Cases I, II) or derivative-based (Case III) projection of f
    onto the span of the first GJFs of the given family.

    For spectral accuracy f should carry the family's endpoint factor
    (e.g. f = (1-x)^alpha * smooth for Plus); f is divided by that factor
    at interior quadrature nodes.

    Case III (-alpha-1 < beta < -1, beta not an integer) needs the fractional
    derivative D_+^alpha f. Pass it as ``frac_deriv``; otherwise it is
    computed pointwise with the quadrature oracle, which is far slower and
    only accurate to roughly 1e-6.

    For the Minus family (with D_-^beta in place of D_+^alpha) the problem
    is mirrored onto the Plus family.
    """
    if side is Side.MINUS:
        g = lambda x: f(-np.asarray(x))
        gd = None if frac_deriv is None else (lambda x: frac_deriv(-np.asarray(x)))
        plus = gjf_project(g, Side.PLUS, beta, alpha, N, frac_deriv=gd, quad_extra=quad_extra)
        signs = (-1.0) ** plus.degrees()
        return CoeffVector(GjfFamily(Side.MINUS, alpha, beta), plus.start, signs * plus.coeffs)

    _check_upsilon(alpha, beta)
    fam = GjfFamily(Side.PLUS, alpha, beta)
    M = N + quad_extra
    case = _case(alpha, beta)
    if case == "I":
        rule = gauss_jacobi_rule((alpha, beta), M)
        x = rule.nodes
        vals = np.asarray(f(x), dtype=float) / weight(alpha, 0.0, x)
        P = jacobi_eval((alpha, beta), N, x)
        gam = np.array([jacobi_norm_gamma((alpha, beta), n) for n in range(N + 1)])
        return CoeffVector(fam, 0, rule.integrate(P * vals) / gam)
    if case == "II":
        k = -_int_param(beta)
        if N < k:
            raise InadmissibleParam(f"N={N} is below the start index {k}")
        rule = gauss_jacobi_rule((alpha, k), M)
        x = rule.nodes
        vals = np.asarray(f(x), dtype=float) / weight(alpha, k, x)
        P = jacobi_eval((alpha, k), N - k, x)
        mom = rule.integrate(P * vals)
        out = np.empty(N - k + 1)
        for j, n in enumerate(range(k, N + 1)):
            d = jacobi_negint_factorize(k, alpha, n)
            out[j] = 2.0**k * mom[j] / (d * jacobi_norm_gamma((alpha, k), n - k))
        return CoeffVector(fam, k, out)
    # Case III
    ab = alpha + beta
    rule = gauss_jacobi_rule((0.0, ab), M)
    x = rule.nodes
    if frac_deriv is None:
        dvals = _oracle_right_deriv(f, alpha, x)
    else:
        dvals = np.asarray(frac_deriv(x), dtype=float)
    P = jacobi_eval((0.0, ab), N, x)
    mom = rule.integrate(P * dvals)
    out = np.array(
        [mom[n] / jacobi_norm_gamma((0.0, ab), n) * gamma_ratio(n + 1, n + alpha + 1) for n in range(N + 1)]
    )
    return CoeffVector(fam, 0, out)


def _oracle_right_deriv(f: Callable, s: float, x: np.ndarray) -> np.ndarray:
    from .fracops import FracOrder, frac_deriv_quad

    order = FracOrder(s)
    half = (order.k + 1) // 2
    out = np.empty_like(x)
    for i, xi in enumerate(x):
        h = min(1e-4, (1 - abs(xi)) / (half + 1))
        out[i] = frac_deriv_quad(f, order, xi, Side.RIGHT, M=40, h=h)
    return out
