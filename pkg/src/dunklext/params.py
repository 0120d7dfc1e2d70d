"""Physical parameters, parity sectors and quantum-number bookkeeping.

Half-integer angular labels are stored doubled (``n2 = 2n``) so that all
indexing arithmetic stays in the integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational, Real

from .errors import AdmissibilityError, DomainError

__all__ = [
    "Parameters",
    "SectorLabel",
    "QuantumNumbers",
    "ExtensionSpec",
    "SECTORS",
    "validate_parameters",
    "alpha",
    "energy",
    "enumerate_states",
    "admissible_n2",
]


def _is_exact(x) -> bool:
    return isinstance(x, Rational)


@dataclass(frozen=True)
class Parameters:
    """Deformation pair (mu1, mu2); each must exceed -1/2.

    Values may be ints/Fractions (exact arithmetic is then available to the
    polynomial solvers) or floats.
    """

    mu1: Real
    mu2: Real

    def __post_init__(self):
        for name in ("mu1", "mu2"):
            value = getattr(self, name)
            if not isinstance(value, Real) or not math.isfinite(float(value)):
                raise DomainError(f"{name} must be a finite real number, got {value!r}")
            if value <= Fraction(-1, 2):
                raise DomainError(f"{name} = {value} violates {name} > -1/2")

    @property
    def total(self):
        """mu1 + mu2, exact when both parameters are."""
        return self.mu1 + self.mu2

    @property
    def exact(self) -> bool:
        return _is_exact(self.mu1) and _is_exact(self.mu2)

    def as_floats(self) -> tuple[float, float]:
        return float(self.mu1), float(self.mu2)

    def to_dict(self) -> dict:
        return {"mu1": float(self.mu1), "mu2": float(self.mu2)}


def validate_parameters(mu1: Real, mu2: Real) -> Parameters:
    return Parameters(mu1, mu2)


@dataclass(frozen=True, order=True)
class SectorLabel:
    """Reflection parities: s_i = 1 - 2*eps_i is the eigenvalue of R_i."""

    eps1: int
    eps2: int

    def __post_init__(self):
        if self.eps1 not in (0, 1) or self.eps2 not in (0, 1):
            raise DomainError(f"sector labels must be 0 or 1, got ({self.eps1}, {self.eps2})")

    @property
    def s1(self) -> int:
        return 1 - 2 * self.eps1

    @property
    def s2(self) -> int:
        return 1 - 2 * self.eps2

    @property
    def code(self) -> int:
        return 2 * self.eps1 + self.eps2

    @classmethod
    def from_eigenvalues(cls, s1: int, s2: int) -> SectorLabel:
        if s1 not in (1, -1) or s2 not in (1, -1):
            raise DomainError("reflection eigenvalues must be +1 or -1")
        return cls((1 - s1) // 2, (1 - s2) // 2)

    @classmethod
    def parse(cls, text: str) -> SectorLabel:
        parts = text.replace("(", "").replace(")", "").split(",")
        if len(parts) != 2:
            raise DomainError(f"cannot parse sector {text!r}; expected 'e1,e2'")
        return cls(int(parts[0]), int(parts[1]))

    def __str__(self):
        return f"({self.eps1},{self.eps2})"


SECTORS = tuple(SectorLabel(e1, e2) for e1 in (0, 1) for e2 in (0, 1))


def admissible_n2(sector: SectorLabel, n2: int) -> bool:
    """True when 2n = n2 is an allowed angular label in ``sector``."""
    e = sector.eps1 + sector.eps2
    return n2 >= e and (n2 - e) % 2 == 0


@dataclass(frozen=True)
class QuantumNumbers:
    sector: SectorLabel
    n2: int
    k: int = 0

    def __post_init__(self):
        if not isinstance(self.n2, int) or not isinstance(self.k, int):
            raise DomainError("n2 and k must be integers")
        if self.k < 0:
            raise DomainError(f"radial index k = {self.k} must be nonnegative")
        if not admissible_n2(self.sector, self.n2):
            raise DomainError(
                f"2n = {self.n2} is not allowed in sector {self.sector}: "
                "need n - (eps1+eps2)/2 a nonnegative integer"
            )

    @property
    def n(self) -> Fraction:
        return Fraction(self.n2, 2)

    @property
    def jacobi_degree(self) -> int:
        return (self.n2 - self.sector.eps1 - self.sector.eps2) // 2

    @property
    def level(self) -> int:
        """2k + 2n, the integer offset of the energy above mu1 + mu2 + 1."""
        return 2 * self.k + self.n2

    @classmethod
    def from_n(cls, sector: SectorLabel, n, k: int = 0) -> QuantumNumbers:
        n2 = Fraction(n) * 2
        if n2.denominator != 1:
            raise DomainError(f"n = {n} is not a half-integer")
        return cls(sector, int(n2), k)


_TAUS = ("I", "II", "III")


@dataclass(frozen=True)
class ExtensionSpec:
    """Type (I, II, III) and index m of an X_m-Laguerre radial extension."""

    tau: str
    m: int

    def __post_init__(self):
        if self.tau not in _TAUS:
            raise AdmissibilityError(f"extension type must be one of {_TAUS}, got {self.tau!r}")
        if not isinstance(self.m, int) or self.m < 1:
            raise AdmissibilityError(f"extension index m must be a positive integer, got {self.m!r}")
        if self.tau == "III" and self.m % 2:
            raise AdmissibilityError(f"type III requires m even, got m = {self.m}")

    @classmethod
    def parse(cls, text: str) -> ExtensionSpec:
        try:
            tau, m = text.split(":")
            m = int(m)
        except ValueError as exc:
            raise AdmissibilityError(f"cannot parse extension {text!r}; expected e.g. 'I:1'") from exc
        return cls(tau.strip().upper(), m)

    def __str__(self):
        return f"{self.tau}:{self.m}"


def alpha(qn: QuantumNumbers, p: Parameters):
    """Laguerre parameter 2n + mu1 + mu2 of the radial channel."""
    return qn.n2 + p.total


def energy(qn: QuantumNumbers, p: Parameters):
    return qn.level + p.total + 1


def enumerate_states(p: Parameters, e_cap: Real) -> list[QuantumNumbers]:
    """All bound states with energy <= e_cap, sorted by (energy, sector, n)."""
    base = p.total + 1
    slack = float(e_cap) - float(base)
    if slack < -1e-12 * max(1.0, abs(float(e_cap))):
        return []
    top = math.floor(slack + 1e-12 * max(1.0, abs(float(e_cap))))
    states = []
    for level in range(top + 1):
        for sector in SECTORS:
            e = sector.eps1 + sector.eps2
            for n2 in range(e, level + 1, 2):
                if (level - n2) % 2 == 0:
                    states.append(QuantumNumbers(sector, n2, (level - n2) // 2))
    states.sort(key=lambda q: (q.level, q.sector.code, q.n2))
    return states
