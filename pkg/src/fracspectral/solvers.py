"""GJF Petrov-Galerkin solvers with diagonal systems.

All four problems are posed with the right-sided RL derivative,
D_+^nu u = f on (-1, 1), and differ in their boundary conditions:

  fivp            u^{(l)}(1) = 0, l < k                (nu = s in (k-1, k))
  fbvp-int2       I_+^mu u(+-1) = 0                   (nu = 2 - mu in (1, 2))
  fbvp-int3       I_+^mu u(+-1) = (I_+^mu u)'(1) = 0  (nu = 3 - mu in (2, 3))
  fbvp-dirichlet  u^{(l)}(+-1) = 0, l < k             (nu = s + k, s in (k-1, k))

Every trial family is Plus(sigma, beta, .) with D_+^sigma mapping it onto
Jacobi polynomials P_n^{(0, sigma+beta)}; test functions are chosen so that
the Galerkin matrix is diagonal, and the solve is a division.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Union

import numpy as np

from .errors import FamilyMismatch, InadmissibleParam, SingularQuadrature
from .fracops import right_deriv_moments
from .gjf import (
    QUAD_EXTRA,
    CoeffVector,
    GjfFamily,
    GjfLabel,
    Side,
    gjf_coeff_norms,
    gjf_eval_all,
    gjf_rl_deriv,
    weight,
)
from .jacobi import gauss_jacobi_rule, jacobi_eval, jacobi_negint_factorize, jacobi_norm_gamma
from .specfun import POLE_TOL, gamma_ratio


class Kind(str, Enum):
    FIVP = "fivp"
    FBVP_INT2 = "fbvp-int2"
    FBVP_INT3 = "fbvp-int3"
    FBVP_DIRICHLET = "fbvp-dirichlet"


def _is_integer(v: float) -> bool:
    return abs(v - round(v)) < POLE_TOL


@dataclass(frozen=True)
class ProblemSpec:
    kind: Kind
    nu: float
    N: int
    rhs: Callable
    quad_extra: int = QUAD_EXTRA

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        nu = float(self.nu)
        object.__setattr__(self, "nu", nu)
        if not nu > 0 or _is_integer(nu):
            raise InadmissibleParam(f"order must be a positive non-integer, got {nu}")
        if self.kind is Kind.FBVP_INT2 and not 1 < nu < 2:
            raise InadmissibleParam("fbvp-int2 needs nu in (1, 2)")
        if self.kind is Kind.FBVP_INT3 and not 2 < nu < 3:
            raise InadmissibleParam("fbvp-int3 needs nu in (2, 3)")
        if self.kind is Kind.FBVP_DIRICHLET and not (self.k - 1 < self.s < self.k):
            raise InadmissibleParam(
                f"fbvp-dirichlet needs nu = s + k with s in (k-1, k); nu={nu} is of odd order"
            )
        if self.top < self.start:
            raise InadmissibleParam(f"N={self.N} leaves no unknowns for {self.kind.value}")
        if self.quad_extra < 1:
            raise InadmissibleParam("quad_extra must be >= 1")

    @property
    def k(self) -> int:
        if self.kind is Kind.FBVP_DIRICHLET:
            return math.ceil(self.nu / 2)
        return math.floor(self.nu) + 1

    @property
    def s(self) -> float:
        if self.kind is Kind.FBVP_DIRICHLET:
            return self.nu - self.k
        return self.nu

    @property
    def mu(self) -> Optional[float]:
        if self.kind is Kind.FBVP_INT2:
            return 2 - self.nu
        if self.kind is Kind.FBVP_INT3:
            return 3 - self.nu
        return None

    @property
    def family(self) -> GjfFamily:
        if self.kind is Kind.FIVP:
            return GjfFamily(Side.PLUS, self.s, -self.s)
        if self.kind is Kind.FBVP_INT2:
            return GjfFamily(Side.PLUS, 1 - self.mu, self.mu - 1)
        if self.kind is Kind.FBVP_INT3:
            return GjfFamily(Side.PLUS, 2 - self.mu, self.mu - 1)
        return GjfFamily(Side.PLUS, self.s, -float(self.k))

    @property
    def sigma(self) -> float:
        """Order of D_+ that maps the trial family onto polynomials."""
        return self.family.alpha

    @property
    def start(self) -> int:
        if self.kind is Kind.FBVP_DIRICHLET:
            return self.k
        return 0 if self.kind is Kind.FIVP else 1

    @property
    def top(self) -> int:
        return {Kind.FBVP_INT2: self.N - 1, Kind.FBVP_INT3: self.N - 2}.get(self.kind, self.N)

    def degrees(self) -> np.ndarray:
        return np.arange(self.start, self.top + 1)

    def with_N(self, N: int) -> "ProblemSpec":
        return ProblemSpec(self.kind, self.nu, N, self.rhs, self.quad_extra)


@dataclass(frozen=True)
class SpectralSolution:
    spec: ProblemSpec
    coeffs: CoeffVector
    diag: np.ndarray

    @property
    def family(self) -> GjfFamily:
        return self.coeffs.family

    def __call__(self, x) -> np.ndarray:
        return eval_solution(self, x)


def closed_form_diag(spec: ProblemSpec) -> np.ndarray:
    """Diagonal of the Petrov-Galerkin matrix, indexed by spec.degrees()."""
    out = []
    for n in spec.degrees():
        n = int(n)
        if spec.kind is Kind.FIVP:
            d = gamma_ratio(n + spec.s + 1, n + 1) * 2 / (2 * n + 1)
        elif spec.kind is Kind.FBVP_INT2:
            # test derivative D I_+^1 P_n = -P_n
            d = -gamma_ratio(n + 2 - spec.mu, n + 1) * 2 / (2 * n + 1)
        elif spec.kind is Kind.FBVP_INT3:
            d = gamma_ratio(n + 3 - spec.mu, n + 1) * (n + 2) * jacobi_norm_gamma((0, 1), n)
        else:
            s, k = spec.s, spec.k
            d = (
                gamma_ratio(n + s + 1, n + 1)
                * gamma_ratio(n + s + 1, n + s - k + 1)
                * jacobi_norm_gamma((0, s - k), n)
            )
        out.append(d)
    return np.array(out)


def _sample(f: Callable, x: np.ndarray) -> np.ndarray:
    vals = np.asarray(f(x), dtype=float)
    if vals.shape != x.shape:
        vals = np.broadcast_to(vals, x.shape).copy()
    if not np.all(np.isfinite(vals)):
        raise SingularQuadrature("right-hand side is not finite at some quadrature node")
    return vals


def rhs_moments(spec: ProblemSpec, M: Optional[int] = None) -> np.ndarray:
    """(f, test_n) for n in spec.degrees(), by Gauss-Jacobi quadrature whose
    weight carries the test function's endpoint factors."""
    M = spec.N + spec.quad_extra if M is None else M
    f = spec.rhs
    if spec.kind is Kind.FIVP:
        rule = gauss_jacobi_rule((0, 0), M)
        P = jacobi_eval((0, 0), spec.N, rule.nodes)
        return rule.integrate(P * _sample(f, rule.nodes))
    if spec.kind is Kind.FBVP_INT2:
        # I_+^1 P_n = (1-x^2) P_{n-1}^{(1,1)} / (2n)
        rule = gauss_jacobi_rule((1, 1), M)
        P = jacobi_eval((1, 1), spec.top - 1, rule.nodes)
        mom = rule.integrate(P * _sample(f, rule.nodes))
        n = spec.degrees()
        return mom / (2 * n)
    if spec.kind is Kind.FBVP_INT3:
        # Minus(-1, 2, m) = (1+x)^2 P_m^{(-1,2)} = -(d/2) (1-x)(1+x)^2 P_{m-1}^{(1,2)}
        rule = gauss_jacobi_rule((1, 2), M)
        P = jacobi_eval((1, 2), spec.top - 1, rule.nodes)
        mom = rule.integrate(P * _sample(f, rule.nodes))
        d = np.array([jacobi_negint_factorize(1, 2.0, int(m)) for m in spec.degrees()])
        return -0.5 * d * mom
    # Dirichlet: Minus(-k, s, m) = (-1)^k 2^-k d (1-x)^k (1+x)^s P_{m-k}^{(k,s)}
    s, k = spec.s, spec.k
    rule = gauss_jacobi_rule((k, s), M)
    P = jacobi_eval((k, s), spec.N - k, rule.nodes)
    mom = rule.integrate(P * _sample(f, rule.nodes))
    d = np.array([jacobi_negint_factorize(k, s, int(m)) for m in spec.degrees()])
    return (-1) ** k * 2.0**-k * d * mom


def solve(spec: ProblemSpec, refine_tol: Optional[float] = None) -> SpectralSolution:
    """Solve any of the four problems.

    With ``refine_tol`` set, the right-hand side moments are recomputed on a
    finer rule and SingularQuadrature is raised if they move by more than
    refine_tol relative to their largest magnitude.
    """
    rhs = rhs_moments(spec)
    if refine_tol is not None:
        finer = rhs_moments(spec, M=2 * (spec.N + spec.quad_extra))
        scale = max(np.max(np.abs(finer)), np.finfo(float).tiny)
        if np.max(np.abs(finer - rhs)) > refine_tol * scale:
            raise SingularQuadrature("right-hand side quadrature did not settle under refinement")
    diag = closed_form_diag(spec)
    return SpectralSolution(spec, CoeffVector(spec.family, spec.start, rhs / diag), diag)


def _require(spec: ProblemSpec, kind: Kind) -> None:
    if spec.kind is not kind:
        raise InadmissibleParam(f"expected a {kind.value} problem, got {spec.kind.value}")


def solve_fivp(spec: ProblemSpec) -> SpectralSolution:
    _require(spec, Kind.FIVP)
    return solve(spec)


def solve_fbvp_integral2(spec: ProblemSpec) -> SpectralSolution:
    _require(spec, Kind.FBVP_INT2)
    return solve(spec)


def solve_fbvp_integral3(spec: ProblemSpec) -> SpectralSolution:
    _require(spec, Kind.FBVP_INT3)
    return solve(spec)


def solve_fbvp_dirichlet(spec: ProblemSpec, refine_tol: Optional[float] = None) -> SpectralSolution:
    _require(spec, Kind.FBVP_DIRICHLET)
    return solve(spec, refine_tol)


def eval_solution(sol: SpectralSolution, xs) -> np.ndarray:
    return sol.coeffs(xs)


# ---------------------------------------------------------------------------
# verification helpers


def _test_image(spec: ProblemSpec, m: int) -> tuple[GjfLabel, float]:
    """Closed-form derivative of the m-th test function as (label, scale)."""
    if spec.kind is Kind.FIVP:
        return GjfLabel(Side.PLUS, 0.0, 0.0, m), 1.0
    if spec.kind is Kind.FBVP_INT2:
        # test = Plus(1, -1, m)/(m+1) and D = -D_+^1
        lab, c = gjf_rl_deriv(GjfLabel(Side.PLUS, 1.0, -1.0, m), 1.0)
        return lab, -c / (m + 1)
    if spec.kind is Kind.FBVP_INT3:
        return gjf_rl_deriv(GjfLabel(Side.MINUS, -1.0, 2.0, m), 1.0)
    k = spec.k
    return gjf_rl_deriv(GjfLabel(Side.MINUS, -float(k), spec.s, m), float(k))


def assemble_matrix(spec: ProblemSpec, M: Optional[int] = None) -> np.ndarray:
    """Full Petrov-Galerkin matrix A[m, n] = (D_+^sigma trial_n, D^j test_m)
    by quadrature of the closed-form images (j = 0 for fivp, 1 for the
    integral problems, k for Dirichlet)."""
    M = spec.N + spec.quad_extra if M is None else M
    fam = spec.family
    b = 0.0
    if spec.kind is Kind.FBVP_DIRICHLET:
        b = spec.s - spec.k  # test images carry (1+x)^{s-k}
    rule = gauss_jacobi_rule((0.0, b), M)
    x = rule.nodes
    deg = spec.degrees()
    trial = []
    test = []
    for n in deg:
        lab, c = gjf_rl_deriv(fam.label(int(n)), spec.sigma)
        trial.append(c * gjf_eval_all(lab.family, lab.n, x)[lab.n])
        lab, c = _test_image(spec, int(n))
        test.append(c * gjf_eval_all(lab.family, lab.n, x)[lab.n] / weight(0.0, b, x))
    trial = np.array(trial)
    test = np.array(test)
    return (test * rule.weights) @ trial.T


def deriv_image_coeffs(sol: SpectralSolution) -> tuple[float, np.ndarray]:
    """D_+^sigma u_N as a P^{(0, b)} series; returns (b, coefficients 0..N)."""
    fam = sol.family
    c = sol.coeffs.dense()
    n = np.arange(len(c))
    g = np.array([gamma_ratio(k + fam.alpha + 1, k + 1) for k in n])
    return fam.alpha + fam.beta, g * c


# ---------------------------------------------------------------------------
# references and errors


def exact_reference(spec: ProblemSpec, dku: Callable, N_ref: int, M: Optional[int] = None) -> SpectralSolution:
    """Expansion of a smooth exact solution u in the trial family, up to N_ref.

    ``dku`` is the K-th derivative of u with K = floor(sigma) + 1, and u^{(j)}(1)
    must vanish for j < K. The coefficients follow from the moments of
    D_+^sigma u against P_n^{(0,b)} (see fracops.right_deriv_moments):

        u_n = n!/Gamma(n+sigma+1) * m_n / gamma_n^{(0,b)}

    Degrees below the trial start index are kept; for a u compatible with the
    boundary conditions they vanish up to rounding.
    """
    fam = spec.family
    sigma, b = fam.alpha, fam.alpha + fam.beta
    K = math.floor(sigma) + 1
    M = N_ref + 64 if M is None else M
    mom = right_deriv_moments(dku, K, sigma, b, N_ref, M)
    coeffs = np.array(
        [mom[n] / jacobi_norm_gamma((0, b), n) * gamma_ratio(n + 1, n + sigma + 1) for n in range(N_ref + 1)]
    )
    ref_spec = spec.with_N(N_ref)
    return SpectralSolution(ref_spec, CoeffVector(fam, 0, coeffs), np.full(N_ref + 1, np.nan))


def _l2_family_diff(diff: CoeffVector, M: int) -> float:
    fam = diff.family
    e = fam.exponent
    side_exp = (2 * e, 0.0) if fam.side is Side.PLUS else (0.0, 2 * e)
    rule = gauss_jacobi_rule(side_exp, M)
    x = rule.nodes
    vals = diff(x) / fam.prefactor(x)
    return math.sqrt(max(rule.integrate(vals * vals), 0.0))


def error_norms(
    sol: SpectralSolution,
    ref: Union[SpectralSolution, Callable],
    which: str = "frac",
    M: Optional[int] = None,
) -> float:
    """Distance between sol and ref.

    which = "l2":   plain L^2(-1, 1) norm of the difference.
    which = "frac": ||D_+^sigma (ref - sol)|| with weight (1+x)^{sigma+beta},
                    from coefficients only.

    A SpectralSolution ref must share sol's family; the L^2 quadrature then
    absorbs the squared endpoint factor, so it is exact for the polynomial
    part. A callable ref is supported for "l2" only (Gauss-Legendre).
    """
    which = which.lower()
    if which in ("fracenergy", "frac_energy"):
        which = "frac"
    if which not in ("l2", "frac"):
        raise ValueError(f"unknown norm {which!r}")
    if isinstance(ref, SpectralSolution):
        if ref.family != sol.family:
            raise FamilyMismatch(f"{sol.family} vs {ref.family}")
        diff = ref.coeffs - sol.coeffs
        if which == "frac":
            fam = sol.family
            return gjf_coeff_norms(diff, fam.alpha, fam.beta, 0)
        M = diff.N + 1 + sol.spec.quad_extra if M is None else M
        return _l2_family_diff(diff, M)
    if which == "frac":
        raise ValueError("the fractional norm needs a coefficient reference")
    M = max(2 * sol.coeffs.N + 64, 128) if M is None else M
    rule = gauss_jacobi_rule((0, 0), M)
    x = rule.nodes
    d = np.asarray(ref(x), dtype=float) - sol(x)
    return math.sqrt(rule.integrate(d * d))


def reference_N(N_list) -> int:
    return 2 * max(N_list) + 32
