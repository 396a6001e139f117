"""Exception types raised by cooperspin."""


class CooperSpinError(Exception):
    """Base class for all package errors."""


class DomainError(CooperSpinError, ValueError):
    """An argument lies outside the domain where the quantity is defined."""


class NonConvergence(CooperSpinError, ArithmeticError):
    """Adaptive quadrature ran out of subdivisions before meeting tolerance.

    The best available estimate and its error bound are kept on the
    exception so callers can decide whether to accept them.
    """

    def __init__(self, message, value=float("nan"), err_est=float("inf"), x=None):
        super().__init__(message)
        self.value = value
        self.err_est = err_est
        self.x = x


class DivisionDegenerate(CooperSpinError, ZeroDivisionError):
    """A normalising integral vanished (e.g. F(0) in the normal state)."""


class NoRootFound(CooperSpinError, RuntimeError):
    """No sign change was found on the search grid."""


class NumericalDegeneracy(CooperSpinError, ArithmeticError):
    """A dense eigen-solve failed."""


class ConfigError(CooperSpinError, ValueError):
    """Invalid run configuration."""
