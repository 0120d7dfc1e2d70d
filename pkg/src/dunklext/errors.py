"""Exception hierarchy.

Every error raised on purpose by the package derives from ``DunklError`` so
callers (and the CLI) can map failures onto exit codes.
"""


class DunklError(Exception):
    """Base class for all package errors."""

    exit_code = 1


class DomainError(DunklError, ValueError):
    """An argument lies outside the domain of the requested object."""

    exit_code = 2


class ParityError(DomainError):
    """A function is not a parity eigenfunction of the requested sector."""


class StencilDomainError(DomainError):
    """A finite-difference stencil would cross a coordinate axis."""


class AdmissibilityError(DunklError, ValueError):
    """An extension (or state label) violates an admissibility constraint."""

    exit_code = 3


class SingularExtensionError(AdmissibilityError):
    """A denominator of an extended potential or state can vanish."""


class DegenerateParametersError(AdmissibilityError):
    """The extension collapses identically (e.g. A == B for the X1 case)."""


class NullspaceDimensionError(AdmissibilityError):
    """A polynomial ansatz did not produce a certified 1-dimensional kernel."""

    def __init__(self, message: str, dimension: int | None = None):
        super().__init__(message)
        self.dimension = dimension


class ConstructionError(DunklError, RuntimeError):
    """A numerical construction (eigen-solver, certification) failed."""
