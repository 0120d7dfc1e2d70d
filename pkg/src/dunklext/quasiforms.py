"""Quasi-rational radial and angular factors with closed-form derivatives.

A radial form is ``c rho**s exp(-rho**2/2) num(rho**2) / den(rho**2)`` (the
Gaussian is optional); an angular form is
``c cos(phi)**a sin(phi)**b num(t) / den(t)`` with ``t = -cos(2 phi)``.
Derivatives are evaluated by the chain rule on this structure, never by
numerical differentiation, so the residual checks built on top are exact to
rounding.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .algebra import certify_sign
from .errors import DomainError, ParityError, SingularExtensionError
from .orthopoly import Polynomial
from .params import Parameters, SectorLabel

__all__ = [
    "RadialForm",
    "AngularForm",
    "eval_radial",
    "eval_angular",
    "radial_jet",
    "angular_jet",
    "apply_radial_operator",
    "apply_angular_operator",
]

ONE = Polynomial([1])
_AXIS_EPS = 1e-300


def _rational_jet(num: Polynomial, den: Polynomial, x):
    """r, r', r'' of num/den at x (derivatives in the polynomial variable)."""
    n0, n1, n2 = num(x), num.deriv()(x), num.deriv(2)(x)
    if den.degree <= 0:
        d0 = float(den.coeffs[0])
        return n0 / d0, n1 / d0, n2 / d0
    d0, d1, d2 = den(x), den.deriv()(x), den.deriv(2)(x)
    r = n0 / d0
    r1 = (n1 - r * d1) / d0
    r2 = (n2 - 2 * r1 * d1 - r * d2) / d0
    return r, r1, r2


@dataclass(frozen=True)
class RadialForm:
    """c * rho**s * [exp(-rho**2/2)] * num(z)/den(z), z = rho**2."""

    c: float
    s: float
    gauss: bool = True
    num: Polynomial = field(default=ONE)
    den: Polynomial = field(default=ONE)

    def __post_init__(self):
        if self.den.degree < 0:
            raise SingularExtensionError("radial denominator is the zero polynomial")
        if self.den.degree > 0:
            certify_sign(self.den, 0.0, None)

    def __call__(self, rho):
        return eval_radial(self, rho, 0)

    def scaled(self, factor: float) -> RadialForm:
        return RadialForm(self.c * factor, self.s, self.gauss, self.num, self.den)


@dataclass(frozen=True)
class AngularForm:
    """c * cos(phi)**a * sin(phi)**b * num(t)/den(t), t = -cos(2 phi).

    Integer exponents use signed powers (so the form carries parity
    (-1)**a under phi -> pi - phi); non-integer exponents act on |cos|, |sin|.
    """

    c: float
    a: float = 0
    b: float = 0
    num: Polynomial = field(default=ONE)
    den: Polynomial = field(default=ONE)

    def __post_init__(self):
        if self.den.degree > 1:
            raise DomainError("angular denominator must have degree <= 1")
        if self.den.degree < 0:
            raise SingularExtensionError("angular denominator is the zero polynomial")
        lo, hi = float(self.den(-1.0)), float(self.den(1.0))
        if lo * hi <= 0:
            raise SingularExtensionError(
                f"angular denominator vanishes on [-1, 1] (den(-1)={lo}, den(1)={hi})"
            )

    def __call__(self, phi):
        return eval_angular(self, phi, 0)

    def scaled(self, factor: float) -> AngularForm:
        return AngularForm(self.c * factor, self.a, self.b, self.num, self.den)

    @property
    def integer_exponents(self) -> bool:
        return float(self.a).is_integer() and float(self.b).is_integer()


def radial_jet(f: RadialForm, rho):
    """(f, f', f'') at rho > 0."""
    rho = np.asarray(rho, dtype=float)
    if np.any(rho <= 0):
        raise DomainError("radial forms are evaluated at rho > 0 only")
    s = float(f.s)
    if f.gauss:
        h = rho**s * np.exp(-0.5 * rho * rho)
        lp = s / rho - rho
        lpp = -s / rho**2 - 1.0
    else:
        h = rho**s
        lp = s / rho
        lpp = -s / rho**2
    h1 = lp * h
    h2 = (lp * lp + lpp) * h
    z = rho * rho
    r, rz, rzz = _rational_jet(f.num, f.den, z)
    q1 = 2 * rho * rz
    q2 = 4 * z * rzz + 2 * rz
    c = float(f.c)
    return c * h * r, c * (h1 * r + h * q1), c * (h2 * r + 2 * h1 * q1 + h * q2)


def eval_radial(f: RadialForm, rho, order: int = 0):
    if order not in (0, 1, 2):
        raise DomainError("order must be 0, 1 or 2")
    out = radial_jet(f, rho)[order]
    return out if np.ndim(out) else float(out)


def _trig_power_jet(cos, sin, a: float, b: float):
    """h, h', h'' of cos**a sin**b.

    Nonnegative integer exponents use expanded derivatives (valid on the
    axes); anything else goes through the logarithmic derivative and is
    rejected on the axes where it is singular.
    """
    int_nonneg = float(a).is_integer() and float(b).is_integer() and a >= 0 and b >= 0
    if int_nonneg:
        a, b = int(a), int(b)

        def pw(x, p):
            return x**p if p >= 0 else np.zeros_like(x)

        h = pw(cos, a) * pw(sin, b)
        h1 = -a * pw(cos, a - 1) * pw(sin, b + 1) + b * pw(cos, a + 1) * pw(sin, b - 1)
        h2 = (
            a * (a - 1) * pw(cos, a - 2) * pw(sin, b + 2)
            - (a * (b + 1) + b * (a + 1)) * pw(cos, a) * pw(sin, b)
            + b * (b - 1) * pw(cos, a + 2) * pw(sin, b - 2)
        )
        return h, h1, h2
    if (a != 0 and np.any(np.abs(cos) < 1e-14)) or (b != 0 and np.any(np.abs(sin) < 1e-14)):
        raise DomainError("angular form is singular on a coordinate axis")
    if float(a).is_integer():
        ca = cos ** int(a)
    else:
        ca = np.abs(cos) ** a
    if float(b).is_integer():
        sb = sin ** int(b)
    else:
        sb = np.abs(sin) ** b
    h = ca * sb
    with np.errstate(divide="ignore", invalid="ignore"):
        tan = sin / cos if a != 0 else 0.0
        cot = cos / sin if b != 0 else 0.0
        lp = -a * tan + b * cot
        lpp = -(a / cos**2 if a != 0 else 0.0) - (b / sin**2 if b != 0 else 0.0)
    return h, lp * h, (lp * lp + lpp) * h


def angular_jet(g: AngularForm, phi):
    """(g, g', g'') at phi."""
    phi = np.asarray(phi, dtype=float)
    cos, sin = np.cos(phi), np.sin(phi)
    h, h1, h2 = _trig_power_jet(cos, sin, g.a, g.b)
    t = -np.cos(2 * phi)
    r, rt, rtt = _rational_jet(g.num, g.den, t)
    t1 = 2 * np.sin(2 * phi)
    t2 = -4 * t
    q1 = rt * t1
    q2 = rtt * t1 * t1 + rt * t2
    c = float(g.c)
    return c * h * r, c * (h1 * r + h * q1), c * (h2 * r + 2 * h1 * q1 + h * q2)


def eval_angular(g: AngularForm, phi, order: int = 0):
    if order not in (0, 1, 2):
        raise DomainError("order must be 0, 1 or 2")
    out = angular_jet(g, phi)[order]
    return out if np.ndim(out) else float(out)


def apply_radial_operator(
    f: RadialForm,
    p: Parameters,
    Msq: float,
    extra_potential: Callable | None,
    rho,
):
    """[A_rho f + M^2/(2 rho^2) f + extra * f](rho).

    A_rho = (1/2)(-d^2/drho^2 - (2 mu1 + 2 mu2 + 1)/rho d/drho + rho^2).
    """
    rho = np.asarray(rho, dtype=float)
    f0, f1, f2 = radial_jet(f, rho)
    s = float(p.total)
    out = 0.5 * (-f2 - (2 * s + 1) / rho * f1 + rho * rho * f0) + 0.5 * float(Msq) / rho**2 * f0
    if extra_potential is not None:
        out = out + extra_potential(rho) * f0
    return out if np.ndim(out) else float(out)


def check_parity(g: AngularForm, sector: SectorLabel) -> None:
    if not g.integer_exponents:
        raise ParityError(f"angular form with exponents ({g.a}, {g.b}) has no definite parity")
    if int(g.a) % 2 != sector.eps1 or int(g.b) % 2 != sector.eps2:
        raise ParityError(
            f"angular form with exponents ({g.a}, {g.b}) does not belong to sector {sector}"
        )


def apply_angular_operator(
    g: AngularForm,
    p: Parameters,
    sector: SectorLabel,
    extra_potential: Callable | None,
    phi,
):
    """[B_phi g + extra * g](phi) with the reflections replaced by their sector eigenvalues."""
    check_parity(g, sector)
    phi = np.asarray(phi, dtype=float)
    g0, g1, g2 = angular_jet(g, phi)
    mu1, mu2 = p.as_floats()
    cos, sin = np.cos(phi), np.sin(phi)
    if np.any(np.abs(cos) < _AXIS_EPS) or np.any(np.abs(sin) < _AXIS_EPS):
        raise DomainError("angular operator is singular on the coordinate axes")
    out = 0.5 * (
        -g2
        + 2 * (mu1 * sin / cos - mu2 * cos / sin) * g1
        + (2 * mu1 * sector.eps1 / cos**2 + 2 * mu2 * sector.eps2 / sin**2) * g0
    )
    if extra_potential is not None:
        out = out + extra_potential(phi) * g0
    return out if np.ndim(out) else float(out)
