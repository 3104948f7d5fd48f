"""Spectral methods for fractional differential equations built on
generalized Jacobi functions."""

__version__ = "0.1.0"

from .errors import (
    ConfigError,
    ConvergenceError,
    DegenerateFit,
    DomainError,
    FamilyMismatch,
    FracSpectralError,
    InadmissibleParam,
    PoleError,
    SingularQuadrature,
)
from .gjf import CoeffVector, GjfFamily, GjfLabel, Side, gjf_eval, gjf_project
from .jacobi import JacobiParam, gauss_jacobi_rule, jacobi_eval
from .solvers import Kind, ProblemSpec, SpectralSolution, error_norms, solve

__all__ = [
    "__version__",
    "CoeffVector",
    "ConfigError",
    "ConvergenceError",
    "DegenerateFit",
    "DomainError",
    "FamilyMismatch",
    "FracSpectralError",
    "GjfFamily",
    "GjfLabel",
    "InadmissibleParam",
    "JacobiParam",
    "Kind",
    "PoleError",
    "ProblemSpec",
    "Side",
    "SingularQuadrature",
    "SpectralSolution",
    "error_norms",
    "gauss_jacobi_rule",
    "gjf_eval",
    "gjf_project",
    "jacobi_eval",
    "solve",
]
