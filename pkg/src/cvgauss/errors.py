"""Exception types shared across the package."""


class CVGaussError(Exception):
    """Base class for all package-specific errors."""


class UnphysicalStateError(CVGaussError):
    """Raised when a covariance matrix or parameter set violates V + i*Omega >= 0."""


class FormMismatch(CVGaussError):
    """Raised when a two-mode covariance does not match the diagonal standard form."""


class CutoffTooSmall(CVGaussError):
    """Raised when a truncated Fock basis leaves too much population near its edge."""

    def __init__(self, message: str, tail_mass: float | None = None):
        super().__init__(message)
        self.tail_mass = tail_mass


class ConfigError(CVGaussError):
    """Raised for malformed, schema-violating, or semantically invalid configs."""
