"""Bound states of the (unextended) Dunkl oscillator in polar coordinates."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError
from .orthopoly import jacobi, laguerre, log_gamma
from .params import Parameters, QuantumNumbers, SectorLabel, admissible_n2
from .quasiforms import AngularForm, RadialForm, eval_angular, eval_radial

__all__ = [
    "BoundState",
    "angular_state",
    "separation_constant",
    "radial_state",
    "assemble",
    "eval_wavefunction",
    "polar_angle",
]


@dataclass(frozen=True)
class BoundState:
    qn: QuantumNumbers
    radial: RadialForm
    angular: AngularForm
    energy: float
    Msq: float
    extension: str = "base"


def _n2_of(n) -> int:
    n2 = Fraction(n) * 2
    if n2.denominator != 1 or n2 < 0:
        raise DomainError(f"n = {n} is not a nonnegative half-integer")
    return int(n2)


def angular_state(sector: SectorLabel, n, p: Parameters) -> AngularForm:
    n2 = _n2_of(n)
    if not admissible_n2(sector, n2):
        raise DomainError(f"n = {Fraction(n2, 2)} is not allowed in sector {sector}")
    e1, e2 = sector.eps1, sector.eps2
    nu = (n2 - e1 - e2) // 2
    nf = n2 / 2
    m1, m2 = p.as_floats()
    if n2 == 0:
        # (2n + mu1 + mu2) Gamma(n + mu1 + mu2) -> Gamma(mu1 + mu2 + 1) at n = 0
        log_top = log_gamma(m1 + m2 + 1)
    else:
        log_top = math.log(2 * nf + m1 + m2) + log_gamma(nf + m1 + m2 + (e1 + e2) / 2)
    log_c2 = (
        log_top
        + log_gamma(nu + 1)
        - math.log(2)
        - log_gamma(nf + m1 + (1 + e1 - e2) / 2)
        - log_gamma(nf + m2 + (1 + e2 - e1) / 2)
    )
    half = Fraction(1, 2) if p.exact else 0.5
    num = jacobi(nu, p.mu1 + e1 - half, p.mu2 + e2 - half)
    return AngularForm(math.exp(0.5 * log_c2), e1, e2, num)


def separation_constant(n, p: Parameters):
    n = Fraction(n) if p.exact else float(n)
    return 4 * n * (n + p.total)


def radial_state(k: int, n, p: Parameters) -> RadialForm:
    n2 = _n2_of(n)
    if k < 0:
        raise DomainError(f"k = {k} must be nonnegative")
    a = n2 + p.total
    log_c2 = math.log(2) + log_gamma(k + 1) - log_gamma(k + float(a) + 1)
    return RadialForm(math.exp(0.5 * log_c2), n2, True, laguerre(k, a))


def assemble(qn: QuantumNumbers, p: Parameters) -> BoundState:
    return BoundState(
        qn=qn,
        radial=radial_state(qn.k, qn.n, p),
        angular=angular_state(qn.sector, qn.n, p),
        energy=float(qn.level + p.total + 1),
        Msq=float(separation_constant(qn.n, p)),
    )


def polar_angle(x1, x2):
    """phi in [0, 2 pi), branch cut on the positive x1 axis."""
    return np.mod(np.arctan2(x2, x1), 2 * np.pi)


def eval_wavefunction(state, x1: float, x2: float) -> float:
    """Psi(x1, x2) = R(rho) Phi(phi) for any state with .radial and .angular."""
    rho = math.hypot(x1, x2)
    if rho == 0:
        raise DomainError("wavefunction evaluation at the origin is not defined")
    phi = float(polar_angle(x1, x2))
    return eval_radial(state.radial, rho) * eval_angular(state.angular, phi)
