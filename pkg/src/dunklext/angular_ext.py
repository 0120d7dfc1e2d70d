"""X_1-Jacobi extension of the angular equation.

The extended Poschl-Teller I potential

    V_ext = V_{A,B} + 8(A+B-1)/D - 8(2A-1)(2B-1)/D**2,  D = A+B-1+(B-A) cos 2x

keeps the levels (A+B+2 nu)**2. Its eigenfunctions cos**A sin**B P(t)/D with
t = -cos 2x carry a degree nu+1 polynomial P, obtained here as the certified
kernel of the equation that P satisfies after clearing denominators:

    (1-t^2)(P'' D^2 - 2 P' D' D + 2 P D'^2) + q (P' D^2 - P D' D)
        + lam P D^2 - 2(A+B-1) P D + 2(2A-1)(2B-1) P = 0

with q = b-a-(a+b+2)t, a = A-1/2, b = B-1/2, lam = nu(nu+A+B) and
D = A+B-1+(A-B)t.

On the plane the extension enters through K_{m1,m2} on each parity sector.
The coupling constant in front of the sector terms is a parameter
(``coupling``); ``resolve_coupling`` fixes it from eigen-residuals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Callable

import numpy as np

from .algebra import solve_polynomial_ode
from .errors import DegenerateParametersError, DomainError, SingularExtensionError
from .orthopoly import Polynomial, log_gamma
from .params import Parameters, SectorLabel, SECTORS, admissible_n2
from .quasiforms import AngularForm, apply_angular_operator
from .verify.quadrature import converged_gram

__all__ = [
    "KTerm",
    "ExtendedAngularState",
    "pt1_potential",
    "pt1_extended_potential",
    "k_term",
    "k_term_polar",
    "l_term",
    "f_component",
    "f_term",
    "f_term_derivative",
    "x1_jacobi",
    "x1_denominator",
    "closed_form_prefactor",
    "convention_leading_coefficient",
    "extended_angular_state",
    "extended_angular_states",
    "sector_extension_potential",
    "check_angular_admissible",
    "NOMINAL_COUPLING",
    "AngularExtension",
    "CouplingResolution",
    "resolve_coupling",
    "resolved_extension",
    "dunkl_square",
    "extended_dunkl_square",
    "base_hamiltonian",
    "g_terms",
    "projector_term",
    "CANDIDATE_COUPLINGS",
]

NOMINAL_COUPLING = 0.5  # nominal sector coupling; resolve_coupling selects 1.0
CANDIDATE_COUPLINGS = (0.5, 1.0)


def _check_pt1(A: float, B: float) -> None:
    if A == B:
        raise DegenerateParametersError(f"A = B = {A:g}: the extended eigenfunctions vanish identically")
    if not min(A, B) > 0.5:
        raise SingularExtensionError(
            f"denominator A+B-1+(B-A)cos 2x vanishes somewhere unless min(A, B) > 1/2; got A={A:g}, B={B:g}"
        )


def pt1_potential(A: float, B: float, x):
    x = np.asarray(x, dtype=float)
    out = A * (A - 1) / np.cos(x) ** 2 + B * (B - 1) / np.sin(x) ** 2
    return out if np.ndim(out) else float(out)


def pt1_extended_potential(A: float, B: float, x):
    A, B = float(A), float(B)
    _check_pt1(A, B)
    x = np.asarray(x, dtype=float)
    d = A + B - 1 + (B - A) * np.cos(2 * x)
    out = pt1_potential(A, B, x) + 8 * (A + B - 1) / d - 8 * (2 * A - 1) * (2 * B - 1) / d**2
    return out if np.ndim(out) else float(out)


@dataclass(frozen=True)
class KTerm:
    """K_{m1,m2}: the rational coefficient attached to one parity sector."""

    m1: float
    m2: float

    def __post_init__(self):
        if not (2 * self.m1 - 1) * (2 * self.m2 - 1) > 0:
            raise SingularExtensionError(
                f"K_{{{self.m1:g},{self.m2:g}}} denominator is not sign-definite "
                "(m1 and m2 must lie strictly on the same side of 1/2)"
            )

    def _q(self, x1, x2):
        return (2 * self.m2 - 1) * x1 * x1 + (2 * self.m1 - 1) * x2 * x2

    def cartesian(self, x1, x2, form: int = 0):
        m1, m2 = self.m1, self.m2
        x1 = np.asarray(x1, dtype=float)
        x2 = np.asarray(x2, dtype=float)
        if np.any((x1 == 0) & (x2 == 0)):
            raise SingularExtensionError("K is singular at the origin")
        q = self._q(x1, x2)
        if form == 0:
            out = (m1 + m2 - 1) / q - (2 * m1 - 1) * (2 * m2 - 1) * (x1 * x1 + x2 * x2) / q**2
        elif form == 1:
            out = (m2 - m1) * (1 / q - 2 * (2 * m1 - 1) * x2 * x2 / q**2)
        elif form == 2:
            out = (m1 - m2) * (1 / q - 2 * (2 * m2 - 1) * x1 * x1 / q**2)
        else:
            raise DomainError("form must be 0, 1 or 2")
        return out if np.ndim(out) else float(out)

    def rho2_polar(self, phi):
        """rho**2 K as a function of the polar angle."""
        m1, m2 = self.m1, self.m2
        phi = np.asarray(phi, dtype=float)
        d = m1 + m2 - 1 - (m1 - m2) * np.cos(2 * phi)
        out = (m1 + m2 - 1) / d - (2 * m1 - 1) * (2 * m2 - 1) / d**2
        return out if np.ndim(out) else float(out)

    def polar(self, rho, phi):
        rho = np.asarray(rho, dtype=float)
        out = self.rho2_polar(phi) / rho**2
        return out if np.ndim(out) else float(out)


def k_term(m1: float, m2: float, x1, x2, form: int = 0):
    return KTerm(float(m1), float(m2)).cartesian(x1, x2, form)


def k_term_polar(m1: float, m2: float, rho, phi):
    return KTerm(float(m1), float(m2)).polar(rho, phi)


def _shifted(p: Parameters, d1: int, d2: int) -> KTerm:
    mu1, mu2 = p.as_floats()
    return KTerm(mu1 + d1, mu2 + d2)


def l_term(p_: int, q_: int, params: Parameters, x1, x2):
    """L^{(p,q)} = K + (-1)^p K_{+1,0} + (-1)^q K_{0,+1} + (-1)^{p+q} K_{+1,+1}."""
    if p_ not in (0, 1) or q_ not in (0, 1):
        raise DomainError("L indices must be 0 or 1")
    sp, sq = (-1) ** p_, (-1) ** q_
    return (
        _shifted(params, 0, 0).cartesian(x1, x2)
        + sp * _shifted(params, 1, 0).cartesian(x1, x2)
        + sq * _shifted(params, 0, 1).cartesian(x1, x2)
        + sp * sq * _shifted(params, 1, 1).cartesian(x1, x2)
    )


def f_component(i: int, m1: float, m2: float, x1, x2):
    """F_i^{(m1,m2)}."""
    k = KTerm(float(m1), float(m2))
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    q = k._q(x1, x2)
    if i == 1:
        out = (m2 - m1) * x1 / q
    elif i == 2:
        out = (m1 - m2) * x2 / q
    else:
        raise DomainError("i must be 1 or 2")
    return out if np.ndim(out) else float(out)


def _f_component_derivative(i: int, m1: float, m2: float, x1, x2):
    """d F_i^{(m1,m2)} / d x_i."""
    k = KTerm(float(m1), float(m2))
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    q = k._q(x1, x2)
    if i == 1:
        out = (m2 - m1) * (1 / q - 2 * (2 * m2 - 1) * x1 * x1 / q**2)
    elif i == 2:
        out = (m1 - m2) * (1 / q - 2 * (2 * m1 - 1) * x2 * x2 / q**2)
    else:
        raise DomainError("i must be 1 or 2")
    return out if np.ndim(out) else float(out)


def _f_combination(fn, i: int, params: Parameters, x1, x2):
    mu1, mu2 = params.as_floats()
    s = (-1) ** i
    return (
        fn(i, mu1, mu2, x1, x2)
        + s * fn(i, mu1 + 1, mu2, x1, x2)
        - s * fn(i, mu1, mu2 + 1, x1, x2)
        - fn(i, mu1 + 1, mu2 + 1, x1, x2)
    )


def f_term(i: int, params: Parameters, x1, x2):
    """F_i of the extended Dunkl derivative D_i + F_i R_i."""
    return _f_combination(f_component, i, params, x1, x2)


def f_term_derivative(i: int, params: Parameters, x1, x2):
    """d F_i / d x_i in closed form."""
    return _f_combination(_f_component_derivative, i, params, x1, x2)


def check_angular_admissible(p: Parameters) -> None:
    """Default regime for the planar extension: mu1, mu2 > 1/2 and mu1 != mu2."""
    mu1, mu2 = p.as_floats()
    if mu1 == mu2:
        raise DegenerateParametersError(f"mu1 = mu2 = {mu1:g}: the (0,0) and (1,1) extensions degenerate")
    if not min(mu1, mu2) > 0.5:
        raise SingularExtensionError(f"angular extension needs mu1, mu2 > 1/2; got ({mu1:g}, {mu2:g})")


def sector_extension_potential(p: Parameters, sector: SectorLabel, coupling: float) -> Callable:
    """phi -> 4 coupling rho^2 K_{mu1+eps1, mu2+eps2}(phi): the sector-reduced extra term."""
    mu1, mu2 = p.as_floats()
    k = KTerm(mu1 + sector.eps1, mu2 + sector.eps2)

    def extra(phi):
        return 4.0 * coupling * k.rho2_polar(phi)

    return extra


def x1_denominator(A, B) -> Polynomial:
    """D(t) = A+B-1 + (A-B) t, i.e. A+B-1+(B-A)cos 2x at t = -cos 2x."""
    return Polynomial([A + B - 1, A - B])


def _angular_weight_params(a: float, b: float) -> Parameters:
    # |cos|^{2A} |sin|^{2B} on the circle
    return Parameters(a + 0.5, b + 0.5)


def x1_jacobi(
    nu_plus_1: int,
    a,
    b,
    *,
    energy_offset=0,
    method: str | None = None,
    normalize: bool = True,
) -> tuple[Polynomial, dict]:
    """Degree nu+1 X_1-Jacobi polynomial for Jacobi parameters (a, b).

    With ``normalize`` the leading coefficient is positive and
    cos**A sin**B P(-cos 2 phi)/D has unit norm on the full circle; otherwise
    the result is monic (exact on the exact path).
    """
    if int(nu_plus_1) != nu_plus_1 or nu_plus_1 < 1:
        raise DomainError(f"degree nu+1 = {nu_plus_1} must be a positive integer")
    nu = int(nu_plus_1) - 1
    if a == b:
        raise DegenerateParametersError(f"a = b = {float(a):g}: no X_1 extension")
    if not (a > -1 and b > -1):
        raise DomainError("Jacobi parameters must exceed -1")
    if method is None:
        exact_ok = all(isinstance(v, Rational) for v in (a, b, energy_offset))
        method = "exact" if exact_ok else "svd"
    exact = method == "exact"
    conv = Fraction if exact else float
    a, b = conv(a), conv(b)
    half = conv(1) / 2
    A, B = a + half, b + half
    _check_pt1(float(A), float(B))
    lam = nu * (nu + A + B) + conv(energy_offset) / 4
    t = Polynomial([0, 1])
    one_minus_t2 = Polynomial([1, 0, -1])
    D = x1_denominator(A, B)
    Dp = A - B
    q = (b - a) - (a + b + 2) * t
    p2 = one_minus_t2 * D * D
    p1 = -2 * Dp * one_minus_t2 * D + q * D * D
    p0 = 2 * Dp * Dp * one_minus_t2 - Dp * q * D + lam * D * D - 2 * (A + B - 1) * D + 2 * (2 * A - 1) * (2 * B - 1)
    poly, info = solve_polynomial_ode(p2, p1, p0, nu + 1, exact=exact)
    if not normalize:
        return poly, info
    form = AngularForm(1.0, 0, 0, poly.to_float(), D.to_float())
    norm2 = converged_gram([form], _angular_weight_params(float(a), float(b)))[0][0, 0]
    return poly.to_float().scale(1.0 / math.sqrt(norm2)), info


def closed_form_prefactor(sector: SectorLabel, n, p: Parameters) -> float:
    """Signed closed-form constant of the extended angular state (log-space)."""
    e1, e2 = sector.eps1, sector.eps2
    mu1, mu2 = p.as_floats()
    nf = float(n)
    nu = int(round(nf - (e1 + e2) / 2))
    lead = mu2 - mu1 + e2 - e1
    log_c2 = (
        math.log(2)
        + math.log(2 * nf + mu1 + mu2)
        + log_gamma(nu + 1)
        + log_gamma(nf + mu1 + mu2 + (e1 + e2) / 2)
        - math.log(nf + mu1 + (1 + e1 - e2) / 2)
        - math.log(nf + mu2 + (1 + e2 - e1) / 2)
        - log_gamma(nf + mu1 + (e1 - e2 - 1) / 2)
        - log_gamma(nf + mu2 + (e2 - e1 - 1) / 2)
    )
    return lead * math.exp(0.5 * log_c2)


def convention_leading_coefficient(nu: int, a: float, b: float) -> float:
    """Leading coefficient of P-hat_{nu+1}: half that of the Jacobi P_nu^{(a,b)}.

    This is the convention under which ``closed_form_prefactor`` yields unit norm.
    """
    a, b = float(a), float(b)
    log_lc = log_gamma(2 * nu + a + b + 1) - nu * math.log(2) - log_gamma(nu + 1) - log_gamma(nu + a + b + 1)
    return 0.5 * math.exp(log_lc)


@dataclass(frozen=True)
class ExtendedAngularState:
    sector: SectorLabel
    n: Fraction
    form: AngularForm
    Msq: float
    closed_form_prefactor: float = field(default=float("nan"))
    quadrature_norm: float = field(default=float("nan"))


def extended_angular_state(sector: SectorLabel, n, p: Parameters) -> ExtendedAngularState:
    """Extended angular state on a parity sector, closed-form normalized.

    The quadrature norm is recorded next to the closed-form constant; the
    state itself is not rescaled.
    """
    n2 = Fraction(n) * 2
    if n2.denominator != 1 or n2 < 0:
        raise DomainError(f"n = {n} is not a nonnegative half-integer")
    n2 = int(n2)
    if not admissible_n2(sector, n2):
        raise DomainError(f"n = {Fraction(n2, 2)} is not allowed in sector {sector}")
    e1, e2 = sector.eps1, sector.eps2
    nu = (n2 - e1 - e2) // 2
    half = Fraction(1, 2) if p.exact else 0.5
    a = p.mu1 + e1 - half
    b = p.mu2 + e2 - half
    A, B = float(a) + 0.5, float(b) + 0.5
    _check_pt1(A, B)
    monic, _ = x1_jacobi(nu + 1, a, b, normalize=False)
    pref = closed_form_prefactor(sector, Fraction(n2, 2), p)
    c = pref * convention_leading_coefficient(nu, float(a), float(b))
    form = AngularForm(c, e1, e2, monic.to_float(), x1_denominator(A, B).to_float())
    qnorm = math.sqrt(converged_gram([form], p)[0][0, 0])
    nf = Fraction(n2, 2)
    Msq = float(4 * nf * (nf + p.total)) if p.exact else 4 * float(nf) * (float(nf) + float(p.total))
    return ExtendedAngularState(sector, nf, form, Msq, pref, qnorm)


def extended_angular_states(p: Parameters, n_max) -> list[ExtendedAngularState]:
    """All extended angular states with n <= n_max, ordered by sector then n."""
    out = []
    for sector in SECTORS:
        for n2 in range(0, int(2 * Fraction(n_max)) + 1):
            if admissible_n2(sector, n2):
                out.append(extended_angular_state(sector, Fraction(n2, 2), p))
    return out


# ---------------------------------------------------------------------------
# Planar operator forms. ``f`` is any object with value(x1, x2),
# grad(x1, x2) -> (f_1, f_2) and hess_diag(x1, x2) -> (f_11, f_22).
# Reflections are applied by evaluating at mirrored points.


def _jet(f, x1, x2):
    return f.value(x1, x2), f.grad(x1, x2), f.hess_diag(x1, x2)


def _off_axis(x1, x2):
    if x1 == 0 or x2 == 0:
        raise DomainError("planar operators are evaluated off the coordinate axes")


def dunkl_square(f, i: int, mu: float, x1: float, x2: float) -> float:
    """D_i^2 f = f_ii + 2 mu/x_i f_i - mu/x_i^2 (f - R_i f)."""
    _off_axis(x1, x2)
    y = x1 if i == 1 else x2
    r = (-x1, x2) if i == 1 else (x1, -x2)
    f0, g, h = _jet(f, x1, x2)
    return h[i - 1] + 2 * mu / y * g[i - 1] - mu / y**2 * (f0 - f.value(*r))


def base_hamiltonian(f, p: Parameters, x1: float, x2: float) -> float:
    mu1, mu2 = p.as_floats()
    return 0.5 * (
        -dunkl_square(f, 1, mu1, x1, x2)
        - dunkl_square(f, 2, mu2, x1, x2)
        + (x1 * x1 + x2 * x2) * f.value(x1, x2)
    )


def mirrored_values(f, x1: float, x2: float) -> tuple[float, float, float, float]:
    """f at x, R1 x, R2 x, R1 R2 x."""
    return f.value(x1, x2), f.value(-x1, x2), f.value(x1, -x2), f.value(-x1, -x2)


def projector_term(p: Parameters, coupling: float, values, x1: float, x2: float) -> float:
    """coupling * sum over sectors of K_{mu+eps} (1 +- R1)(1 +- R2) f, from mirrored values."""
    v, v1, v2, v12 = values
    mu1, mu2 = p.as_floats()
    total = 0.0
    for sector in SECTORS:
        s1, s2 = 1 - 2 * sector.eps1, 1 - 2 * sector.eps2
        k = KTerm(mu1 + sector.eps1, mu2 + sector.eps2).cartesian(x1, x2)
        total += k * (v + s1 * v1 + s2 * v2 + s1 * s2 * v12)
    return coupling * total


def l_term_contribution(p: Parameters, coupling: float, values, x1: float, x2: float) -> float:
    """coupling * (L00 f + L10 R1 f + L01 R2 f + L11 R1 R2 f)."""
    v, v1, v2, v12 = values
    return coupling * (
        l_term(0, 0, p, x1, x2) * v
        + l_term(1, 0, p, x1, x2) * v1
        + l_term(0, 1, p, x1, x2) * v2
        + l_term(1, 1, p, x1, x2) * v12
    )


def extended_dunkl_square(f, i: int, p: Parameters, x1: float, x2: float, scale: float = 1.0) -> float:
    """(D_i + scale F_i R_i)^2 f at (x1, x2), exact from the jets of f at x and R_i x."""
    _off_axis(x1, x2)
    mu = p.as_floats()[i - 1]
    y = x1 if i == 1 else x2
    r = (-x1, x2) if i == 1 else (x1, -x2)
    f0, g0, h0 = _jet(f, x1, x2)
    fr, gr = f.value(*r), f.grad(*r)
    d, dr = g0[i - 1], gr[i - 1]
    F = scale * f_term(i, p, x1, x2)
    Fr = scale * f_term(i, p, *r)
    dF = scale * f_term_derivative(i, p, x1, x2)
    # D-hat f at x and at R_i x
    Df = d + mu / y * (f0 - fr) + F * fr
    Df_r = dr + mu / (-y) * (fr - f0) + Fr * f0
    # d/dx_i of D-hat f at x
    dDf = h0[i - 1] - mu / y**2 * (f0 - fr) + mu / y * (d + dr) + dF * fr - F * dr
    return dDf + mu / y * (Df - Df_r) + F * Df_r


def g_terms(p: Parameters, x1: float, x2: float, scale: float = 1.0) -> tuple[float, float]:
    """G1, G2 with F replaced by scale F and L by scale L."""
    mu1, mu2 = p.as_floats()
    F1 = scale * f_term(1, p, x1, x2)
    F2 = scale * f_term(2, p, x1, x2)
    G1 = scale * l_term(0, 0, p, x1, x2) + 2 * mu1 / x1 * F1 - F1 * F1 + 2 * mu2 / x2 * F2 - F2 * F2
    G2 = scale * l_term(1, 1, p, x1, x2)
    return G1, G2


@dataclass(frozen=True)
class AngularExtension:
    """Planar extended Hamiltonian with a given sector coupling.

    The sector terms read coupling * K (1 +- R1)(1 +- R2); the L and D-hat
    forms carry the matching factor 2 * coupling inside the overall 1/2.
    """

    params: Parameters
    coupling: float

    def __post_init__(self):
        check_angular_admissible(self.params)

    def apply_projector_form(self, f, x1: float, x2: float) -> float:
        vals = mirrored_values(f, x1, x2)
        return base_hamiltonian(f, self.params, x1, x2) + projector_term(self.params, self.coupling, vals, x1, x2)

    def apply_l_form(self, f, x1: float, x2: float) -> float:
        p = self.params
        mu1, mu2 = p.as_floats()
        vals = mirrored_values(f, x1, x2)
        return 0.5 * (
            -dunkl_square(f, 1, mu1, x1, x2)
            - dunkl_square(f, 2, mu2, x1, x2)
            + (x1 * x1 + x2 * x2) * vals[0]
            + l_term_contribution(p, 2 * self.coupling, vals, x1, x2)
        )

    def apply_dhat_form(self, f, x1: float, x2: float) -> float:
        p = self.params
        lam = 2 * self.coupling
        G1, G2 = g_terms(p, x1, x2, lam)
        return 0.5 * (
            -extended_dunkl_square(f, 1, p, x1, x2, lam)
            - extended_dunkl_square(f, 2, p, x1, x2, lam)
            + (x1 * x1 + x2 * x2 + G1) * f.value(x1, x2)
            + G2 * f.value(-x1, -x2)
        )

    def pointwise_term(self, psi: Callable, x1: float, x2: float) -> float:
        """Extra term of the projector form for a pointwise evaluator (FD oracle hook)."""
        vals = (psi(x1, x2), psi(-x1, x2), psi(x1, -x2), psi(-x1, -x2))
        return projector_term(self.params, self.coupling, vals, x1, x2)

    def sector_potential(self, sector: SectorLabel) -> Callable:
        return sector_extension_potential(self.params, sector, self.coupling)


@dataclass(frozen=True)
class CouplingResolution:
    coupling: float
    residuals: dict
    gap_orders: float
    states: int


def resolve_coupling(
    p: Parameters,
    n_max=Fraction(3, 2),
    candidates=CANDIDATE_COUPLINGS,
    phis=None,
) -> CouplingResolution:
    """Pick the sector coupling under which the extended angular states are eigenstates.

    For every candidate the largest relative residual of B_ext g - (M^2/2) g
    over all extended states with n <= n_max is computed; the candidate with the
    smallest residual is adopted and the gap (in decades) to the runner-up is
    reported.
    """
    if phis is None:
        phis = np.linspace(0.05, 2 * np.pi - 0.05, 37)
        phis = phis[(np.abs(np.cos(phis)) > 1e-3) & (np.abs(np.sin(phis)) > 1e-3)]
    states = extended_angular_states(p, n_max)
    residuals = {}
    for c in candidates:
        worst = 0.0
        for st in states:
            g = st.form(phis)
            r = apply_angular_operator(st.form, p, st.sector, sector_extension_potential(p, st.sector, c), phis)
            worst = max(worst, float(np.max(np.abs(r - 0.5 * st.Msq * g)) / max(float(np.max(np.abs(g))), 1e-12)))
        residuals[float(c)] = worst
    ordered = sorted(residuals, key=residuals.get)
    best = ordered[0]
    floor = 1e-300
    gap = math.log10(max(residuals[ordered[1]], floor) / max(residuals[best], floor)) if len(ordered) > 1 else math.inf
    return CouplingResolution(best, residuals, gap, len(states))


def resolved_extension(p: Parameters) -> tuple[AngularExtension, CouplingResolution]:
    res = resolve_coupling(p)
    return AngularExtension(p, res.coupling), res
