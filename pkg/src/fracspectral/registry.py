"""Named right-hand sides and manufactured exact solutions.

A plain name maps to f directly. An exact-solution name maps to u and
its first three derivatives; the matching right-hand side is

    f = D_+^nu u = (-1)^K I_+^{K-nu} u^{(K)},   K = floor(nu) + 1,

which holds because every registered u has u^{(j)}(1) = 0 for j < K in
the problems it is meant for (checked at build time). The fractional
integral is evaluated with the Gauss-Jacobi oracle, which is spectrally
accurate here since u^{(K)} is entire.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import ConfigError
from .fracops import frac_integral_quad
from .gjf import Side
from .solvers import Kind

RHS_QUAD_POINTS = 48


def _one(x):
    return np.ones_like(np.asarray(x, dtype=float))


PLAIN = {
    "one": _one,
    "1+x+cos(x)": lambda x: 1 + x + np.cos(x),
    "sin(x)": np.sin,
    "x*exp(x)": lambda x: x * np.exp(x),
}


def _cubic_exp(mu: Optional[float]) -> list[Callable]:
    # u = (1 - x^3)(1 - e^{1-x})
    def parts(x):
        x = np.asarray(x, dtype=float)
        E = np.exp(1 - x)
        return x, E, 1 - x**3, 1 - E

    def u0(x):
        x, E, a, b = parts(x)
        return a * b

    def u1(x):
        x, E, a, b = parts(x)
        return -3 * x**2 * b + a * E

    def u2(x):
        x, E, a, b = parts(x)
        return -6 * x * b - 6 * x**2 * E - a * E

    def u3(x):
        x, E, a, b = parts(x)
        return -6 * b - 18 * x * E + 9 * x**2 * E + a * E

    return [u0, u1, u2, u3]


def _cubic_shifted(mu: Optional[float]) -> list[Callable]:
    # u = (1-x)^2 (1 - x - 6/(3+mu)) = t^3 - c t^2 with t = 1 - x
    if mu is None:
        raise ConfigError("'(1-x)^2*(1-x-6/(3+mu))' needs a problem with an integral order mu")
    c = 6.0 / (3.0 + mu)
    return [
        lambda x: (1 - np.asarray(x)) ** 3 - c * (1 - np.asarray(x)) ** 2,
        lambda x: -3 * (1 - np.asarray(x)) ** 2 + 2 * c * (1 - np.asarray(x)),
        lambda x: 6 * (1 - np.asarray(x)) - 2 * c,
        lambda x: -6 * np.ones_like(np.asarray(x, dtype=float)),
    ]


def _sine(mu: Optional[float]) -> list[Callable]:
    # u = (1-x) sin(pi x)
    pi = math.pi
    return [
        lambda x: (1 - x) * np.sin(pi * x),
        lambda x: -np.sin(pi * x) + pi * (1 - x) * np.cos(pi * x),
        lambda x: -2 * pi * np.cos(pi * x) - pi**2 * (1 - x) * np.sin(pi * x),
        lambda x: 3 * pi**2 * np.sin(pi * x) - pi**3 * (1 - x) * np.cos(pi * x),
    ]


EXACT = {
    "(1-x^3)*(1-exp(1-x))": _cubic_exp,
    "(1-x)^2*(1-x-6/(3+mu))": _cubic_shifted,
    "(1-x)*sin(pi*x)": _sine,
}

# Problems whose boundary conditions each exact solution satisfies.
EXACT_KINDS = {
    "(1-x^3)*(1-exp(1-x))": {Kind.FIVP},
    "(1-x)^2*(1-x-6/(3+mu))": {Kind.FBVP_INT2},
    "(1-x)*sin(pi*x)": {Kind.FIVP, Kind.FBVP_DIRICHLET},
}


def names() -> list[str]:
    return list(PLAIN) + list(EXACT)


def problem_mu(kind: Kind, nu: float) -> Optional[float]:
    kind = Kind(kind)
    if kind is Kind.FBVP_INT2:
        return 2 - nu
    if kind is Kind.FBVP_INT3:
        return 3 - nu
    return None


@dataclass(frozen=True)
class Manufactured:
    """Exact solution u (with derivatives) and its right-hand side."""

    name: str
    nu: float
    derivs: Sequence[Callable]

    def rhs(self, x):
        K = math.floor(self.nu) + 1
        sign = (-1) ** K
        return sign * frac_integral_quad(self.derivs[K], K - self.nu, x, Side.RIGHT, RHS_QUAD_POINTS)

    def deriv(self, j: int) -> Callable:
        return self.derivs[j]


def is_exact(name: str) -> bool:
    return name in EXACT


def plain_rhs(name: str) -> Callable:
    try:
        return PLAIN[name]
    except KeyError:
        raise ConfigError(f"unknown right-hand side {name!r}; known: {names()}") from None


def manufactured(name: str, kind: Kind, nu: float) -> Manufactured:
    if name not in EXACT:
        raise ConfigError(f"unknown exact solution {name!r}; known: {list(EXACT)}")
    kind = Kind(kind)
    if kind not in EXACT_KINDS[name]:
        ok = sorted(k.value for k in EXACT_KINDS[name])
        raise ConfigError(f"{name!r} does not meet the {kind.value} boundary conditions; use it with {ok}")
    derivs = EXACT[name](problem_mu(kind, nu))
    K = math.floor(nu) + 1
    if K > 3:
        raise ConfigError(f"order {nu} needs more derivatives than registered")
    one = np.array([1.0])
    for j in range(K):
        if abs(float(derivs[j](one)[0])) > 1e-12:
            raise ConfigError(
                f"{name!r}: derivative {j} does not vanish at x=1, so D_+^{nu} u is not the Caputo form"
            )
    return Manufactured(name, float(nu), derivs)
