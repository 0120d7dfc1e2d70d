"""Rational extensions of the planar Dunkl oscillator.

Base eigenstates in polar form, X_m-Laguerre radial extensions, the X_1-Jacobi
angular extension with its planar operator forms, and independent verifiers.
"""

from .errors import (
    AdmissibilityError,
    ConstructionError,
    DegenerateParametersError,
    DomainError,
    DunklError,
    NullspaceDimensionError,
    ParityError,
    SingularExtensionError,
    StencilDomainError,
)
from .params import ExtensionSpec, Parameters, QuantumNumbers, SectorLabel, SECTORS, enumerate_states

__version__ = "0.1.0"

__all__ = [
    "AdmissibilityError",
    "ConstructionError",
    "DegenerateParametersError",
    "DomainError",
    "DunklError",
    "NullspaceDimensionError",
    "ParityError",
    "SingularExtensionError",
    "StencilDomainError",
    "ExtensionSpec",
    "Parameters",
    "QuantumNumbers",
    "SectorLabel",
    "SECTORS",
    "enumerate_states",
    "__version__",
]
