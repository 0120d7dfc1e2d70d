"""Independent oracles: a Cartesian finite-difference Hamiltonian and a radial grid eigensolver."""

from __future__ import annotations

import math
from typing import Callable

import numpy as np
from scipy.linalg import eigh_tridiagonal

from ..errors import DomainError, StencilDomainError
from ..params import Parameters

__all__ = [
    "fd_cartesian_hamiltonian",
    "fd_convergence_order",
    "grid_spectrum_oracle",
    "DEFAULT_STEPS",
]

DEFAULT_STEPS = (1e-2, 5e-3)


def _fd_once(psi: Callable, p: Parameters, ext: Callable | None, x1: float, x2: float, h: float) -> float:
    mu1, mu2 = p.as_floats()
    if min(abs(x1), abs(x2)) <= 2 * h:
        raise StencilDomainError(f"stencil of half-width {2 * h:g} reaches an axis at ({x1:g}, {x2:g})")
    f0 = psi(x1, x2)

    def d1d2(g):
        gp1, gm1, gp2, gm2 = g(h), g(-h), g(2 * h), g(-2 * h)
        d1 = (-gp2 + 8 * gp1 - 8 * gm1 + gm2) / (12 * h)
        d2 = (-gp2 + 16 * gp1 - 30 * f0 + 16 * gm1 - gm2) / (12 * h * h)
        return d1, d2

    a1, b1 = d1d2(lambda s: psi(x1 + s, x2))
    a2, b2 = d1d2(lambda s: psi(x1, x2 + s))
    dd1 = b1 + 2 * mu1 / x1 * a1 - mu1 / x1**2 * (f0 - psi(-x1, x2))
    dd2 = b2 + 2 * mu2 / x2 * a2 - mu2 / x2**2 * (f0 - psi(x1, -x2))
    out = 0.5 * (-dd1 - dd2 + (x1 * x1 + x2 * x2) * f0)
    if ext is not None:
        out += ext(psi, x1, x2)
    return out


def fd_cartesian_hamiltonian(
    psi: Callable,
    p: Parameters,
    ext: Callable | None,
    x1: float,
    x2: float,
    h: float | tuple = DEFAULT_STEPS,
) -> float:
    """(H psi)(x1, x2) from point values of psi only.

    Fourth-order central differences for the derivatives, mirrored evaluations
    for the reflections, plus ``ext(psi, x1, x2)`` for extension terms. A pair
    of steps (h, h/2) is combined by Richardson extrapolation.
    """
    if x1 == 0 and x2 == 0:
        raise DomainError("the Hamiltonian is not evaluated at the origin")
    if np.ndim(h) == 0:
        return _fd_once(psi, p, ext, x1, x2, float(h))
    h1, h2 = h
    a, b = _fd_once(psi, p, ext, x1, x2, h1), _fd_once(psi, p, ext, x1, x2, h2)
    ratio = (h1 / h2) ** 4
    return (ratio * b - a) / (ratio - 1)


def fd_convergence_order(
    psi: Callable,
    p: Parameters,
    exact: float,
    x1: float,
    x2: float,
    steps=(0.08, 0.04, 0.02),
    ext: Callable | None = None,
) -> float:
    """Least-squares log-log slope of |FD(h) - exact| against h."""
    errs = [abs(_fd_once(psi, p, ext, x1, x2, h) - exact) for h in steps]
    if min(errs) == 0:
        return math.inf
    slope = np.polyfit(np.log(steps), np.log(errs), 1)[0]
    return float(slope)


def _grid_levels(potential: Callable, centrifugal: float, rho_max: float, points: int, count: int) -> np.ndarray:
    h = rho_max / (points + 1)
    rho = h * np.arange(1, points + 1)
    diag = 1.0 / h**2 + 0.5 * centrifugal / rho**2 + potential(rho)
    off = np.full(points - 1, -0.5 / h**2)
    return eigh_tridiagonal(diag, off, select="i", select_range=(0, count - 1), eigvals_only=True)


def grid_spectrum_oracle(
    potential: Callable,
    p: Parameters,
    n,
    grid: tuple[float, int] = (12.0, 3999),
    count: int = 5,
) -> list[float]:
    """Lowest radial levels of -Q''/2 + (alpha^2 - 1/4)/(2 rho^2) Q + V Q, alpha = 2n + mu1 + mu2.

    Dirichlet ends on (0, rho_max). The levels from ``points`` and
    (points + 1)/2 - 1 interior nodes (step h and 2h) are combined by
    Richardson extrapolation of the O(h^2) error.
    """
    rho_max, points = grid
    if points > 4000 or points < 20:
        raise DomainError("grid size must be between 20 and 4000 points")
    alpha = 2 * float(n) + float(p.total)
    cf = alpha * alpha - 0.25
    fine = _grid_levels(potential, cf, rho_max, points, count)
    coarse = _grid_levels(potential, cf, rho_max, (points + 1) // 2 - 1, count)
    return list((4 * fine - coarse) / 3)
