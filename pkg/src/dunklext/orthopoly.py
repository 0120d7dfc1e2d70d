"""Dense univariate polynomials and the classical families built on them.

Coefficients are stored in ascending order. They stay exact (``Fraction``)
when every input is rational and fall back to floats otherwise; evaluation is
always Horner on the coefficient list.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable

import numpy as np

from .errors import DomainError

__all__ = ["Polynomial", "laguerre", "jacobi", "log_gamma", "exactify"]


def exactify(x):
    """Fraction for rational input, float otherwise."""
    if isinstance(x, Rational):
        return Fraction(x)
    return float(x)


class Polynomial:
    """Immutable polynomial sum_j coeffs[j] * x**j."""

    __slots__ = ("coeffs", "_float")

    def __init__(self, coeffs: Iterable):
        c = [exactify(x) for x in coeffs]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        if not c:
            c = [Fraction(0)]
        self.coeffs: tuple = tuple(c)
        self._float = np.array([float(x) for x in c])

    @classmethod
    def constant(cls, value) -> Polynomial:
        return cls([value])

    @classmethod
    def monomial(cls, degree: int, value=1) -> Polynomial:
        return cls([0] * degree + [value])

    @property
    def degree(self) -> int:
        """Index of the last nonzero coefficient (-1 for the zero polynomial)."""
        if len(self.coeffs) == 1 and self.coeffs[0] == 0:
            return -1
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1]

    @property
    def exact(self) -> bool:
        return all(isinstance(x, Fraction) for x in self.coeffs)

    @property
    def float_coeffs(self) -> np.ndarray:
        return self._float.copy()

    def __call__(self, x):
        if isinstance(x, Rational) and self.exact:
            acc = Fraction(0)
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        x = np.asarray(x, dtype=float)
        acc = np.zeros_like(x) + self._float[-1]
        for c in self._float[-2::-1]:
            acc = acc * x + c
        return acc if acc.ndim else float(acc)

    def deriv(self, order: int = 1) -> Polynomial:
        c = list(self.coeffs)
        for _ in range(order):
            c = [j * c[j] for j in range(1, len(c))] or [0]
        return Polynomial(c)

    def to_float(self) -> Polynomial:
        return Polynomial(self._float)

    def scale(self, factor) -> Polynomial:
        return Polynomial([factor * c for c in self.coeffs])

    def compose_linear(self, a, b=0) -> Polynomial:
        """p(a*x + b)."""
        out = Polynomial([0])
        lin = Polynomial([b, a])
        for c in reversed(self.coeffs):
            out = out * lin + c
        return out

    def reflect(self) -> Polynomial:
        """p(-x)."""
        return Polynomial([c if j % 2 == 0 else -c for j, c in enumerate(self.coeffs)])

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            return other
        return Polynomial([other])

    def __add__(self, other):
        o = self._coerce(other)
        n = max(len(self.coeffs), len(o.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(o.coeffs) + [0] * (n - len(o.coeffs))
        return Polynomial([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial({[str(c) if isinstance(c, Fraction) else c for c in self.coeffs]})"


def laguerre(k: int, alpha) -> Polynomial:
    """Generalized Laguerre polynomial L_k^(alpha)(z); any real alpha."""
    if k < 0:
        raise DomainError(f"degree must be nonnegative, got {k}")
    a = exactify(alpha)
    prev = Polynomial([1])
    if k == 0:
        return prev
    cur = Polynomial([1 + a, -1])
    z = Polynomial([0, 1])
    for j in range(1, k):
        nxt = ((2 * j + 1 + a) * cur - z * cur - (j + a) * prev).scale(Fraction(1, j + 1))
        prev, cur = cur, nxt
    return cur


def jacobi(nu: int, a, b) -> Polynomial:
    """Jacobi polynomial P_nu^(a,b)(t) for a, b > -1."""
    if a <= -1 or b <= -1:
        raise DomainError(f"Jacobi parameters need a, b > -1, got a={a}, b={b}")
    if nu < 0:
        raise DomainError(f"degree must be nonnegative, got {nu}")
    a, b = exactify(a), exactify(b)
    prev = Polynomial([1])
    if nu == 0:
        return prev
    # (a+1) + (a+b+2)(t-1)/2
    half = (a + b + 2) / 2
    cur = Polynomial([a + 1 - half, half])
    t = Polynomial([0, 1])
    for n in range(1, nu):
        s = 2 * n + a + b
        c1 = 2 * (n + 1) * (n + a + b + 1) * s
        c2 = (s + 1) * (s + 2) * s
        c3 = (s + 1) * (a * a - b * b)
        c4 = 2 * (n + a) * (n + b) * (s + 2)
        nxt = (c2 * t * cur + c3 * cur - c4 * prev).scale(1 / c1)
        prev, cur = cur, nxt
    return cur


def log_gamma(x) -> float:
    """ln Gamma(x) for x > 0."""
    if x <= 0:
        raise DomainError(f"log_gamma needs x > 0, got {x}")
    return math.lgamma(float(x))
