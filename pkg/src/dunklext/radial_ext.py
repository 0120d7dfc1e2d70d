"""X_m-Laguerre rational extensions of the radial equation (types I, II, III).

The exceptional polynomials are not transcribed from tables: for a target
energy the degree-k polynomial y with

    R(rho) = rho**(2n) exp(-rho**2/2) y(rho**2) / g(rho**2)

solving the extended radial equation is obtained as the certified kernel of a
linear system on its coefficients. In z = rho**2 and after clearing
denominators the equation reads

    z g y'' + [(alpha+1-z) g - 2 z g'] y' + [z g'' - (alpha - z) g' + lam g] y = 0

with lam = (E - alpha - 1)/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np

from .algebra import certify_sign, solve_polynomial_ode
from .errors import AdmissibilityError, DomainError
from .orthopoly import Polynomial, laguerre, log_gamma
from .params import ExtensionSpec, Parameters, QuantumNumbers, SectorLabel
from .quasiforms import RadialForm
from .verify.quadrature import converged_gram

__all__ = [
    "GFactor",
    "ExtendedRadialState",
    "g_factor",
    "extended_potential",
    "extension_term",
    "xm_laguerre",
    "admissible_k",
    "extended_energy_level",
    "closed_form_norm",
    "extended_radial_state",
    "convention_leading_coefficient",
    "default_sector",
    "m1_potential",
    "RadialCoupling",
]


@dataclass(frozen=True)
class GFactor:
    spec: ExtensionSpec
    alpha: float
    poly: Polynomial

    def log_derivatives(self, z):
        """(g'/g, g''/g) at z."""
        g0 = self.poly(z)
        return self.poly.deriv()(z) / g0, self.poly.deriv(2)(z) / g0


def _check_admissible(spec: ExtensionSpec, alpha) -> None:
    if spec.tau in ("II", "III") and not spec.m < alpha + 1:
        raise AdmissibilityError(
            f"type {spec.tau} needs m < alpha + 1; got m = {spec.m}, alpha = {float(alpha):g}"
        )


def g_factor(spec: ExtensionSpec, alpha) -> GFactor:
    """Seed polynomial g_m^(tau, alpha)(z), certified free of zeros on z >= 0."""
    _check_admissible(spec, alpha)
    if spec.tau == "I":
        poly = laguerre(spec.m, alpha - 1).reflect()
    elif spec.tau == "II":
        poly = laguerre(spec.m, -alpha - 1)
    else:
        poly = laguerre(spec.m, -alpha - 1).reflect()
    certify_sign(poly, 0.0, None)
    return GFactor(spec, alpha, poly)


def extension_term(g: GFactor, rho):
    """-2 { g'/g + 2 z [g''/g - (g'/g)**2] } at z = rho**2 (dots are d/dz)."""
    rho = np.asarray(rho, dtype=float)
    z = rho * rho
    l1, l2 = g.log_derivatives(z)
    out = -2.0 * (l1 + 2.0 * z * (l2 - l1 * l1))
    return out if np.ndim(out) else float(out)


def extended_potential(g: GFactor, rho):
    """Harmonic potential rho**2/2 plus the rational extension term."""
    rho = np.asarray(rho, dtype=float)
    out = 0.5 * rho * rho + extension_term(g, rho)
    return out if np.ndim(out) else float(out)


def m1_potential(alpha: float, rho):
    """Closed form of the m = 1 type I/II extended potential."""
    rho = np.asarray(rho, dtype=float)
    d = rho * rho + alpha
    out = 0.5 * rho * rho + 2.0 / d - 4.0 * alpha / d**2
    return out if np.ndim(out) else float(out)


def admissible_k(spec: ExtensionSpec, k: int) -> bool:
    if spec.tau == "III":
        return k == 0 or k >= spec.m + 1
    return k >= spec.m


def extended_energy_level(spec: ExtensionSpec, k: int, n2: int) -> int:
    """2k - 2m + 2n: integer offset of the extended energy above mu1 + mu2 + 1."""
    return 2 * k - 2 * spec.m + n2


def _as_number(x, exact: bool):
    if exact:
        return Fraction(x)
    return float(x)


def xm_laguerre(
    spec: ExtensionSpec,
    k: int,
    alpha,
    *,
    energy_offset=0,
    method: str | None = None,
    normalize: bool = True,
) -> tuple[Polynomial, dict]:
    """Degree-k X_m-Laguerre polynomial for channel parameter alpha.

    ``energy_offset`` shifts the target energy away from 2k - 2m + alpha + 1
    (used to test that the kernel collapses off the spectrum). With
    ``normalize`` the result has positive leading coefficient and the assembled
    state rho**(2n) e^{-z/2} y/g has unit norm; otherwise it is monic (and exact
    on the exact path).
    """
    if not admissible_k(spec, k):
        raise AdmissibilityError(f"k = {k} is outside the admissible range for type {spec}")
    g = g_factor(spec, alpha)
    if method is None:
        method = "exact" if isinstance(alpha, Rational) and isinstance(energy_offset, Rational) else "svd"
    exact = method == "exact"
    a = _as_number(alpha, exact)
    lam = _as_number(k - spec.m, exact) + _as_number(energy_offset, exact) / 2
    gp = g.poly if exact else g.poly.to_float()
    if exact and not gp.exact:
        raise DomainError("exact solve needs a rational alpha")
    z = Polynomial([0, 1])
    g1, g2 = gp.deriv(), gp.deriv(2)
    p2 = z * gp
    p1 = (a + 1 - z) * gp - 2 * z * g1
    p0 = z * g2 - (a - z) * g1 + lam * gp
    y, info = solve_polynomial_ode(p2, p1, p0, k, exact=exact)
    info["g"] = [float(c) for c in gp.coeffs]
    if not normalize:
        return y, info
    form = RadialForm(1.0, 0.0, True, y, g.poly)
    norm2 = converged_gram([form], _channel_params(alpha))[0][0, 0]
    return y.to_float().scale(1.0 / math.sqrt(norm2)), info


def _channel_params(alpha) -> Parameters:
    """Parameters whose radial weight rho**(2 mu1 + 2 mu2 + 1) equals z**alpha weight for n = 0."""
    return Parameters(float(alpha) / 2, float(alpha) / 2)


def closed_form_norm(spec: ExtensionSpec, k: int, alpha) -> float:
    """Normalization constant N^(tau, alpha)_{m,k,n} in closed form."""
    m = spec.m
    a = float(alpha)
    if spec.tau == "I":
        log_n2 = math.log(2) + log_gamma(k - m + 1) - math.log(k + a) - log_gamma(k + a - m)
    elif spec.tau == "II":
        log_n2 = math.log(2) + log_gamma(k - m + 1) - math.log(k + a + 1 - 2 * m) - log_gamma(k + a + 2 - m)
    elif k == 0:
        log_n2 = math.log(2) - log_gamma(a + 1 - m) - log_gamma(m + 1)
    else:
        log_n2 = math.log(2) + log_gamma(k - m) - math.log(k) - log_gamma(k + a + 1 - m)
    return math.exp(0.5 * log_n2)


@dataclass(frozen=True)
class ExtendedRadialState:
    spec: ExtensionSpec
    qn: QuantumNumbers
    form: RadialForm
    energy: float
    closed_form_norm: float
    quadrature_norm: float


class RadialCoupling:
    """Pointwise extension term acting on a planar function (for Cartesian oracles)."""

    def __init__(self, g: GFactor):
        self.g = g

    def __call__(self, psi, x1: float, x2: float) -> float:
        rho = math.hypot(x1, x2)
        return extension_term(self.g, rho) * psi(x1, x2)


def convention_leading_coefficient(spec: ExtensionSpec, k: int, alpha) -> float:
    """Leading coefficient of y under which ``closed_form_norm`` gives unit norm."""
    m = spec.m
    if spec.tau == "I":
        return 1.0 / (math.factorial(m) * math.factorial(k - m))
    if spec.tau == "II":
        return (k + float(alpha) + 1 - 2 * m) / (math.factorial(m) * math.factorial(k - m))
    if k == 0:
        return 1.0
    return 1.0 / (math.factorial(m) * math.factorial(k - m - 1))


def default_sector(n2: int) -> SectorLabel:
    return SectorLabel(0, 0) if n2 % 2 == 0 else SectorLabel(0, 1)


def extended_radial_state(
    spec: ExtensionSpec, k: int, n, p: Parameters, sector: SectorLabel | None = None
) -> ExtendedRadialState:
    """Unit-norm extended radial state with the closed-form constant, cross-checked by quadrature."""
    n2 = Fraction(n) * 2
    if n2.denominator != 1 or n2 < 0:
        raise DomainError(f"n = {n} is not a nonnegative half-integer")
    n2 = int(n2)
    if sector is None:
        sector = default_sector(n2)
    qn = QuantumNumbers(sector, n2, k)
    alpha = n2 + p.total
    y, _ = xm_laguerre(spec, k, alpha, normalize=False)
    g = g_factor(spec, alpha)
    lc = convention_leading_coefficient(spec, k, alpha)
    cnorm = closed_form_norm(spec, k, alpha)
    form = RadialForm(cnorm * lc, n2, True, y.to_float(), g.poly.to_float())
    qnorm = math.sqrt(converged_gram([form], p)[0][0, 0])
    energy = float(extended_energy_level(spec, k, n2) + p.total + 1)
    return ExtendedRadialState(spec, qn, form, energy, cnorm, qnorm)
