"""Smooth planar test functions with analytic first and second derivatives.

Each function is exp(l . x - gamma |x|^2 / 2) P(x1, x2) with a bivariate
polynomial P. Linear terms in the exponent and odd monomials give every
mixture of parities under x1 -> -x1 and x2 -> -x2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly

__all__ = ["GaussPoly", "test_battery"]


@dataclass(frozen=True, eq=False)
class GaussPoly:
    coeffs: np.ndarray  # coeffs[i, j] multiplies x1**i x2**j
    l1: float = 0.0
    l2: float = 0.0
    gamma: float = 1.0

    def _parts(self, x1, x2):
        e = np.exp(self.l1 * x1 + self.l2 * x2 - 0.5 * self.gamma * (x1 * x1 + x2 * x2))
        return e, self.l1 - self.gamma * x1, self.l2 - self.gamma * x2

    def _poly(self, x1, x2, d1=0, d2=0):
        c = self.coeffs
        if d1:
            c = npoly.polyder(c, d1, axis=0)
        if d2:
            c = npoly.polyder(c, d2, axis=1)
        return npoly.polyval2d(x1, x2, c)

    def value(self, x1, x2):
        e, _, _ = self._parts(x1, x2)
        return e * self._poly(x1, x2)

    def __call__(self, x1, x2):
        return self.value(x1, x2)

    def grad(self, x1, x2):
        e, a1, a2 = self._parts(x1, x2)
        p = self._poly(x1, x2)
        return (
            e * (self._poly(x1, x2, 1, 0) + a1 * p),
            e * (self._poly(x1, x2, 0, 1) + a2 * p),
        )

    def hess_diag(self, x1, x2):
        e, a1, a2 = self._parts(x1, x2)
        p = self._poly(x1, x2)
        g = self.gamma
        return (
            e * (self._poly(x1, x2, 2, 0) + 2 * a1 * self._poly(x1, x2, 1, 0) + (a1 * a1 - g) * p),
            e * (self._poly(x1, x2, 0, 2) + 2 * a2 * self._poly(x1, x2, 0, 1) + (a2 * a2 - g) * p),
        )


def test_battery(seed: int = 0, size: int = 20) -> list[GaussPoly]:
    """Fixed, seeded battery of mixed-parity test functions."""
    rng = np.random.default_rng(seed)
    out = []
    for j in range(size):
        deg = 1 + j % 4
        c = rng.normal(size=(deg + 1, deg + 1))
        # every fourth function is kept even-even, the next odd in x1, ...
        kind = j % 4
        if kind == 0:
            c[1::2, :] = 0
            c[:, 1::2] = 0
            l1 = l2 = 0.0
        elif kind == 1:
            c[0::2, :] = 0
            l1 = l2 = 0.0
        else:
            l1, l2 = rng.uniform(-0.6, 0.6, size=2)
        if not np.any(c):
            c[-1, -1] = 1.0
        out.append(GaussPoly(c, float(l1), float(l2), float(rng.uniform(0.6, 1.4))))
    return out
