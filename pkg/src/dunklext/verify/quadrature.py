"""Gauss rules for the two measures of the problem and Gram matrices on them.

Radial inner products live on rho**(2 mu1 + 2 mu2 + 1) d rho over (0, inf); after
z = rho**2 they become generalized-Laguerre integrals. Angular inner products
live on |cos|**(2 mu1) |sin|**(2 mu2) d phi over (0, 2 pi); each quadrant maps to a
Jacobi(mu1 - 1/2, mu2 - 1/2) integral in t = -cos(2 phi).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

from ..errors import ConstructionError, DomainError
from ..params import Parameters
from ..quasiforms import AngularForm, RadialForm, eval_angular

__all__ = [
    "WeightFamily",
    "QuadratureRule",
    "gauss_rule",
    "laguerre_family",
    "jacobi_family",
    "radial_gram",
    "angular_gram",
    "gram_matrix",
    "converged_gram",
    "default_nodes",
    "angular_mass",
]


@dataclass(frozen=True)
class WeightFamily:
    """``laguerre``: z**a exp(-z) on (0, inf); ``jacobi``: (1-t)**a (1+t)**b on (-1, 1)."""

    kind: str
    a: float
    b: float = 0.0

    def __post_init__(self):
        if self.kind not in ("laguerre", "jacobi"):
            raise DomainError(f"unknown weight family {self.kind!r}")
        if self.a <= -1 or (self.kind == "jacobi" and self.b <= -1):
            raise DomainError("weight parameters must exceed -1")

    def mass(self) -> float:
        if self.kind == "laguerre":
            return math.gamma(self.a + 1)
        a, b = self.a, self.b
        return math.exp((a + b + 1) * math.log(2) + math.lgamma(a + 1) + math.lgamma(b + 1) - math.lgamma(a + b + 2))

    def recurrence(self, n: int) -> tuple[np.ndarray, np.ndarray]:
        """Diagonal and off-diagonal of the Jacobi matrix (monic recurrence)."""
        j = np.arange(n, dtype=float)
        if self.kind == "laguerre":
            diag = 2 * j + self.a + 1
            jj = j[1:]
            off = np.sqrt(jj * (jj + self.a))
            return diag, off
        a, b = self.a, self.b
        s = 2 * j + a + b
        with np.errstate(divide="ignore", invalid="ignore"):
            diag = (b * b - a * a) / (s * (s + 2))
        diag[0] = (b - a) / (a + b + 2)
        jj = j[1:]
        sj = 2 * jj + a + b
        with np.errstate(divide="ignore", invalid="ignore"):
            beta = 4 * jj * (jj + a) * (jj + b) * (jj + a + b) / (sj * sj * (sj + 1) * (sj - 1))
        if n > 1:
            beta[0] = 4 * (a + 1) * (b + 1) / ((a + b + 2) ** 2 * (a + b + 3))
        return diag, np.sqrt(beta)


def laguerre_family(a: float) -> WeightFamily:
    return WeightFamily("laguerre", float(a))


def jacobi_family(a: float, b: float) -> WeightFamily:
    return WeightFamily("jacobi", float(a), float(b))


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    family: WeightFamily

    def integrate(self, values) -> float:
        return float(np.dot(self.weights, values))


_RULE_CACHE: dict = {}


def gauss_rule(family: WeightFamily, N: int) -> QuadratureRule:
    """N-point Gauss rule by Golub-Welsch."""
    if N < 1:
        raise DomainError("a Gauss rule needs N >= 1")
    key = (family, N)
    if key in _RULE_CACHE:
        return _RULE_CACHE[key]
    diag, off = family.recurrence(N)
    try:
        nodes, vecs = eigh_tridiagonal(diag, off)
    except np.linalg.LinAlgError as exc:
        raise ConstructionError(f"Golub-Welsch eigen-solve failed: {exc}") from exc
    weights = family.mass() * vecs[0, :] ** 2
    if not np.all(np.isfinite(nodes)) or not np.all(weights >= 0):
        raise ConstructionError("Golub-Welsch produced invalid nodes or weights")
    rule = QuadratureRule(nodes, weights, family)
    _RULE_CACHE[key] = rule
    return rule


def default_nodes(max_degree: int) -> int:
    return 4 * max_degree + 40


def _radial_core(f: RadialForm, z: np.ndarray) -> np.ndarray:
    """num/den at z times c; the rho power and Gaussian are absorbed by the weight."""
    return float(f.c) * f.num(z) / f.den(z)


def radial_gram(forms: list[RadialForm], p: Parameters, N: int | None = None) -> np.ndarray:
    """<f_i, f_j> with measure rho**(2 mu1 + 2 mu2 + 1) d rho.

    Every form must carry the Gaussian factor. With z = rho**2 the integrand is
    (1/2) z**((s_i + s_j)/2 + mu1 + mu2) exp(-z) times the rational cores.
    """
    if not all(f.gauss for f in forms):
        raise DomainError("radial_gram needs forms with the Gaussian factor")
    if N is None:
        N = default_nodes(max(f.num.degree + f.den.degree for f in forms))
    n = len(forms)
    G = np.zeros((n, n))
    m = float(p.total)
    for i in range(n):
        for j in range(i, n):
            a = 0.5 * (float(forms[i].s) + float(forms[j].s)) + m
            rule = gauss_rule(laguerre_family(a), N)
            vals = _radial_core(forms[i], rule.nodes) * _radial_core(forms[j], rule.nodes)
            G[i, j] = G[j, i] = 0.5 * rule.integrate(vals)
    return G


def angular_points(p: Parameters, N: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes in (0, 2 pi) and weights for |cos|**(2 mu1) |sin|**(2 mu2) d phi.

    Exact for integrands that are polynomials in t = -cos(2 phi) on every
    quadrant (after the four-fold mirror sum).
    """
    mu1, mu2 = p.as_floats()
    rule = gauss_rule(jacobi_family(mu1 - 0.5, mu2 - 0.5), N)
    phi0 = 0.5 * np.arccos(-rule.nodes)
    w0 = rule.weights * 2.0 ** (-(mu1 + mu2) - 1)
    phis = np.concatenate([phi0, np.pi - phi0, np.pi + phi0, 2 * np.pi - phi0])
    ws = np.tile(w0, 4)
    return phis, ws


def angular_mass(p: Parameters) -> float:
    mu1, mu2 = p.as_floats()
    return 2 * math.exp(math.lgamma(mu1 + 0.5) + math.lgamma(mu2 + 0.5) - math.lgamma(mu1 + mu2 + 1))


def angular_gram(forms: list[AngularForm], p: Parameters, N: int | None = None) -> np.ndarray:
    """<g_i, g_j> with measure |cos|**(2 mu1) |sin|**(2 mu2) d phi on (0, 2 pi)."""
    if N is None:
        N = default_nodes(max(g.num.degree + 2 * g.den.degree for g in forms) + 2)
    phis, ws = angular_points(p, N)
    vals = np.array([eval_angular(g, phis) for g in forms])
    return (vals * ws) @ vals.T


def gram_matrix(states: list, p: Parameters, N: int | None = None) -> np.ndarray:
    """Gram matrix of radial or angular forms (all of one kind)."""
    if not states:
        return np.zeros((0, 0))
    if all(isinstance(s, RadialForm) for s in states):
        return radial_gram(states, p, N)
    if all(isinstance(s, AngularForm) for s in states):
        return angular_gram(states, p, N)
    raise DomainError("gram_matrix needs forms sharing one measure")


def converged_gram(
    states: list, p: Parameters, *, N0: int | None = None, tol: float = 1e-13, N_max: int = 1600
) -> tuple[np.ndarray, int]:
    """Gram matrix with N doubled until no entry moves by more than ``tol``.

    Rational integrands with poles near the integration path (certified
    nonvanishing denominators with complex roots close to the axis) converge
    geometrically but slowly; this returns the first stable result and the
    node count that produced it.
    """
    if N0 is None:
        forms = list(states)
        if isinstance(forms[0], RadialForm):
            N0 = default_nodes(max(f.num.degree + f.den.degree for f in forms))
        else:
            N0 = default_nodes(max(g.num.degree + 2 * g.den.degree for g in forms) + 2)
    G = gram_matrix(states, p, N0)
    N = N0
    while N < N_max:
        G2 = gram_matrix(states, p, 2 * N)
        N *= 2
        if np.max(np.abs(G2 - G)) <= tol * max(1.0, float(np.max(np.abs(G2)))):
            return G2, N
        G = G2
    raise ConstructionError(f"Gram matrix did not converge with up to {N_max} nodes")
