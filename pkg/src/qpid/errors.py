"""Exception types raised by the library."""


class QPIDError(Exception):
    """Base class for all library errors."""


class ValidationError(QPIDError, ValueError):
    """Invalid input: bad labels, shapes, parameters or tables."""


class LabelError(ValidationError, KeyError):
    """A subsystem label is unknown or duplicated."""

    def __str__(self):
        return Exception.__str__(self)


class LayoutError(ValidationError):
    """Operators live on incompatible Hilbert layouts."""


class NumericalError(QPIDError, ArithmeticError):
    """A numerical precondition failed on otherwise well-formed input."""


class NotPSDError(NumericalError):
    """Operator has an eigenvalue below the PSD tolerance."""


class SupportLeakError(NumericalError):
    """rho_AB carries weight outside the support of Z_AB."""
