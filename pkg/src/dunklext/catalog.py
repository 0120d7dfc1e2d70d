"""Spectrum tables and named eigenstates (base, radially or angularly extended)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real

import numpy as np

from .angular_ext import check_angular_admissible, extended_angular_state
from .basestates import angular_state, polar_angle, radial_state, separation_constant
from .errors import AdmissibilityError, DomainError
from .params import (
    SECTORS,
    ExtensionSpec,
    Parameters,
    QuantumNumbers,
    SectorLabel,
    admissible_n2,
    enumerate_states,
)
from .quasiforms import AngularForm, RadialForm, eval_angular, eval_radial
from .radial_ext import admissible_k, extended_radial_state

__all__ = ["SpectrumRow", "spectrum_rows", "PlanarState", "build_state", "wavefunction", "sample_grid"]

_TOL = 1e-12


@dataclass(frozen=True)
class SpectrumRow:
    sector: SectorLabel
    n: Fraction
    k: int
    Msq: float
    energy: float
    extension: str
    level: int  # doubled-integer offset: energy = level + mu1 + mu2 + 1

    def as_dict(self) -> dict:
        return {
            "sector": str(self.sector),
            "n": str(self.n),
            "k": self.k,
            "Msq": self.Msq,
            "energy": self.energy,
            "extension": self.extension,
        }


def _channel_admissible(spec: ExtensionSpec, n2: int, p: Parameters) -> bool:
    a = n2 + float(p.total)
    return spec.tau == "I" or spec.m < a + 1


def spectrum_rows(
    p: Parameters,
    emax: Real,
    ext: ExtensionSpec | None = None,
    angular_ext: bool = False,
) -> list[SpectrumRow]:
    """All states with energy <= emax, sorted by (level, sector, n, k).

    With ``ext`` the radial quantum number runs over the admissible k of the
    X_m-Laguerre family and channels n where the extension is inadmissible are
    left out. With ``angular_ext`` the angular factors are X_1-Jacobi; the
    levels are unchanged.
    """
    if ext is not None and angular_ext:
        raise DomainError("radial and angular extensions are tabulated separately")
    s = float(p.total)
    tag = "base"
    if angular_ext:
        check_angular_admissible(p)
        tag = "angular-X1"
    if ext is None:
        states = enumerate_states(p, emax)
        return [
            SpectrumRow(
                q.sector,
                q.n,
                q.k,
                float(separation_constant(q.n, p)),
                q.level + s + 1,
                tag,
                q.level,
            )
            for q in states
        ]
    rows = []
    max_level = math.floor(float(emax) - s - 1 + _TOL)
    for n2 in range(0, max_level + 2 * ext.m + 1):
        if not _channel_admissible(ext, n2, p):
            continue
        k = 0
        while True:
            level = 2 * k - 2 * ext.m + n2
            if level > max_level:
                break
            if admissible_k(ext, k):
                for sector in SECTORS:
                    if admissible_n2(sector, n2):
                        n = Fraction(n2, 2)
                        rows.append(
                            SpectrumRow(sector, n, k, float(separation_constant(n, p)), level + s + 1, f"radial-{ext}", level)
                        )
            k += 1
    rows.sort(key=lambda r: (r.level, r.sector.code, r.n, r.k))
    return rows


@dataclass(frozen=True)
class PlanarState:
    qn: QuantumNumbers
    radial: RadialForm
    angular: AngularForm
    energy: float
    Msq: float
    extension: str


def build_state(
    p: Parameters,
    sector: SectorLabel,
    n,
    k: int,
    ext: ExtensionSpec | None = None,
    angular_ext: bool = False,
) -> PlanarState:
    if ext is not None and angular_ext:
        raise DomainError("radial and angular extensions are built separately")
    qn = QuantumNumbers.from_n(sector, n, k)
    if ext is not None:
        if not admissible_k(ext, k):
            raise AdmissibilityError(f"k = {k} is not admissible for type {ext}")
        rs = extended_radial_state(ext, k, qn.n, p, sector)
        ang = angular_state(sector, qn.n, p)
        return PlanarState(qn, rs.form, ang, rs.energy, float(separation_constant(qn.n, p)), f"radial-{ext}")
    rad = radial_state(k, qn.n, p)
    if angular_ext:
        check_angular_admissible(p)
        ang_state = extended_angular_state(sector, qn.n, p)
        ang, tag = ang_state.form, "angular-X1"
    else:
        ang, tag = angular_state(sector, qn.n, p), "base"
    return PlanarState(qn, rad, ang, float(qn.level + p.total + 1), float(separation_constant(qn.n, p)), tag)


def _origin_value(state) -> float:
    r = state.radial
    if float(r.s) > 0:
        return 0.0
    g = state.angular
    if g.num.degree <= 0 and g.den.degree <= 0 and g.a == 0 and g.b == 0:
        return eval_angular(g, 0.0) * float(r.c) * float(r.num(0.0)) / float(r.den(0.0))
    return math.nan


def wavefunction(state, x1: float, x2: float) -> float:
    """Psi(x1, x2); at the origin the limit when it exists, otherwise nan."""
    rho = math.hypot(x1, x2)
    if rho == 0:
        return _origin_value(state)
    return eval_radial(state.radial, rho) * eval_angular(state.angular, float(polar_angle(x1, x2)))


def sample_grid(state, extent: float, points: int) -> list[tuple[float, float, float]]:
    """Psi on the square grid linspace(-extent, extent, points)**2, x2 varying fastest."""
    if points < 1 or extent <= 0:
        raise DomainError("grid needs points >= 1 and extent > 0")
    axis = np.linspace(-extent, extent, points) if points > 1 else np.array([0.0])
    axis = 0.5 * (axis - axis[::-1])  # exactly symmetric under x -> -x
    return [(float(a), float(b), wavefunction(state, float(a), float(b))) for a in axis for b in axis]
