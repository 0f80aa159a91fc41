"""Exception hierarchy shared by the numerical modules and the CLI."""


class Fluor3Error(Exception):
    """Base class for errors raised by fluor3."""


class UnsupportedModeError(Fluor3Error, ValueError):
    """Requested dissipation mode has no counterpart for the operation."""


class DegenerateSteadyStateError(Fluor3Error, ArithmeticError):
    """Steady state is not unique (or numerically indistinguishable from that)."""


class PoleError(Fluor3Error, ArithmeticError):
    """Laplace variable sits on (or numerically at) an eigenvalue of the Bloch matrix."""

    def __init__(self, message, s=None, eigenvalue=None):
        super().__init__(message)
        self.s = s
        self.eigenvalue = eigenvalue


class InsufficientWindowError(Fluor3Error, ValueError):
    """Time window of a quadrature is too short for the correlation to have decayed."""


class ConfigError(Fluor3Error, ValueError):
    """Malformed run configuration."""
