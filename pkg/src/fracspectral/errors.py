"""Exception types raised across the package."""


class FracSpectralError(Exception):
    """Base class for all library errors."""


class PoleError(FracSpectralError, ArithmeticError):
    """A gamma function was evaluated at (or next to) a pole."""


class InadmissibleParam(FracSpectralError, ValueError):
    """Parameters fall outside the range where a formula holds."""


class ConvergenceError(FracSpectralError, RuntimeError):
    """An iteration did not reach its tolerance."""


class DomainError(FracSpectralError, ValueError):
    """Evaluation point outside the domain of a function."""


class FamilyMismatch(FracSpectralError, ValueError):
    """Coefficient vectors belong to incompatible basis families."""


class SingularQuadrature(FracSpectralError, RuntimeError):
    """A right-hand side could not be integrated reliably."""


class ConfigError(FracSpectralError, ValueError):
    """Invalid study configuration or unknown registry name."""


class DegenerateFit(FracSpectralError, ValueError):
    """Not enough usable points to fit a convergence rate."""
