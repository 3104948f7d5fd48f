"""Scalar gamma-function helpers.

Everything here works on plain Python floats. Ratios of gamma functions
are formed from log-gammas so that quantities like Gamma(n+s+1)/n! stay
finite for n in the thousands.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import PoleError

POLE_TOL = 1e-12


@dataclass(frozen=True)
class SignedLogValue:
    """A real number stored as ``sign * exp(log_abs)``.

    ``sign == 0`` encodes an exact zero (``log_abs`` is then ``-inf``).
    """

    log_abs: float
    sign: int

    @property
    def value(self) -> float:
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.log_abs)

    def __mul__(self, other: "SignedLogValue") -> "SignedLogValue":
        if self.sign == 0 or other.sign == 0:
            return ZERO
        return SignedLogValue(self.log_abs + other.log_abs, self.sign * other.sign)

    def __truediv__(self, other: "SignedLogValue") -> "SignedLogValue":
        if other.sign == 0:
            raise ZeroDivisionError("division by an exact zero")
        if self.sign == 0:
            return ZERO
        return SignedLogValue(self.log_abs - other.log_abs, self.sign * other.sign)


ZERO = SignedLogValue(-math.inf, 0)


def is_pole(x: float) -> bool:
    """True when x is (numerically) one of 0, -1, -2, ..."""
    r = round(x)
    return r <= 0 and abs(x - r) < POLE_TOL


def log_gamma(x: float) -> SignedLogValue:
    """ln|Gamma(x)| together with the sign of Gamma(x).

    Raises PoleError at the non-positive integers.
    """
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"log_gamma needs a finite argument, got {x}")
    if is_pole(x):
        raise PoleError(f"Gamma has a pole at {x}")
    if x > 0:
        return SignedLogValue(math.lgamma(x), 1)
    # Gamma(x) = pi / (sin(pi x) Gamma(1 - x)) with Gamma(1 - x) > 0, so the
    # sign follows sin(pi x): negative on (-1, 0), positive on (-2, -1), ...
    # math.lgamma already returns ln|Gamma| on the negative axis.
    sign = 1 if math.floor(x) % 2 == 0 else -1
    return SignedLogValue(math.lgamma(x), sign)


def gamma_ratio(a: float, b: float) -> float:
    """Gamma(a) / Gamma(b).

    Returns an exact 0 when only b sits on a pole. When both do, the
    finite limit along a common shift is returned.
    """
    pa, pb = is_pole(a), is_pole(b)
    if pa and pb:
        # limit of Gamma(-m + e)/Gamma(-j + e) = (-1)^(j-m) j!/m!
        m, j = -round(a), -round(b)
        return (-1.0) ** (j - m) * math.exp(math.lgamma(j + 1) - math.lgamma(m + 1))
    if pb:
        return 0.0
    if pa:
        raise PoleError(f"Gamma({a})/Gamma({b}) is infinite")
    return (log_gamma(a) / log_gamma(b)).value


def log_gamma_ratio(a: float, b: float) -> SignedLogValue:
    """Signed log of Gamma(a)/Gamma(b); both arguments must be regular."""
    return log_gamma(a) / log_gamma(b)


def rgamma(x: float) -> float:
    """1/Gamma(x), which is 0 at the poles."""
    return gamma_ratio(1.0, x)


def pochhammer(a: float, j: int) -> float:
    """Rising factorial (a)_j as a plain product."""
    if j < 0:
        raise ValueError("pochhammer needs j >= 0")
    out = 1.0
    for i in range(j):
        out *= a + i
    return out
