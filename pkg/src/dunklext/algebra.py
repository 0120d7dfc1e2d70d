"""Linear-algebra kernels for the polynomial ansatz solvers.

* certified one-dimensional nullspaces, by exact rational elimination or by a
  floating SVD with a singular-value gap test plus a pointwise residual check;
* the coefficient matrix of a second-order polynomial ODE acting on the
  monomials of a fixed degree;
* sign certification of a polynomial on an interval without root finding.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import NullspaceDimensionError, SingularExtensionError
from .orthopoly import Polynomial

__all__ = [
    "exact_nullspace",
    "svd_null_vector",
    "ode_matrix",
    "solve_polynomial_ode",
    "certify_sign",
    "SVD_NULL_RTOL",
    "SVD_GAP_RTOL",
    "ODE_RESIDUAL_RTOL",
]

SVD_NULL_RTOL = 1e-10
SVD_GAP_RTOL = 1e-6
# In the monomial basis the operator is strongly non-normal at high degree, so
# the smallest singular value alone cannot tell a kernel from a near-miss.
ODE_RESIDUAL_RTOL = 1e-8


def exact_nullspace(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of {v : A v = 0} by reduced row echelon form over the rationals."""
    a = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -a[i][fc]
        basis.append(v)
    return basis


def svd_null_vector(matrix: np.ndarray, reference: float | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Null vector of a column-equilibrated matrix, with the gap certificate.

    Accepts only when the smallest singular value is <= SVD_NULL_RTOL times the
    largest and the next one is >= SVD_GAP_RTOL times the largest.
    A single column has no internal scale; it is compared against
    ``reference`` (the size of the operator that produced it) instead.
    Returns (vector, singular values).
    """
    a = np.asarray(matrix, dtype=float)
    if a.shape[1] == 1 and reference is not None:
        nrm = float(np.linalg.norm(a))
        if nrm > SVD_NULL_RTOL * reference:
            raise NullspaceDimensionError(
                f"no kernel: column norm {nrm:.3e} vs operator scale {reference:.3e}", dimension=0
            )
        return np.ones(1), np.array([nrm])
    norms = np.linalg.norm(a, axis=0)
    norms[norms == 0] = 1.0
    u, s, vt = np.linalg.svd(a / norms, full_matrices=True)
    ncols = a.shape[1]
    sv = np.zeros(ncols)
    sv[: len(s)] = s
    smax = sv.max()
    if smax == 0:
        raise NullspaceDimensionError("zero operator matrix", dimension=ncols)
    small = sv[-1] <= SVD_NULL_RTOL * smax
    gap = ncols < 2 or sv[-2] >= SVD_GAP_RTOL * smax
    if not small:
        raise NullspaceDimensionError(
            f"no kernel: smallest singular value {sv[-1]:.3e} vs largest {smax:.3e}", dimension=0
        )
    if not gap:
        raise NullspaceDimensionError(
            f"kernel not certified one-dimensional: second-smallest singular value "
            f"{sv[-2]:.3e} vs largest {smax:.3e}",
            dimension=2,
        )
    return vt[-1] / norms, sv


def ode_matrix(p2: Polynomial, p1: Polynomial, p0: Polynomial, degree: int) -> tuple[list[Polynomial], int]:
    """Images of 1, x, ..., x**degree under  y -> p2 y'' + p1 y' + p0 y."""
    cols = []
    for j in range(degree + 1):
        col = p0 * Polynomial.monomial(j)
        if j >= 1:
            col = col + p1 * Polynomial.monomial(j - 1, j)
        if j >= 2:
            col = col + p2 * Polynomial.monomial(j - 2, j * (j - 1))
        cols.append(col)
    nrows = max(len(c.coeffs) for c in cols)
    return cols, nrows


def ode_relative_residual(p2: Polynomial, p1: Polynomial, p0: Polynomial, y: Polynomial) -> float:
    """max |p2 y'' + p1 y' + p0 y| / (|p2 y''| + |p1 y'| + |p0 y|) at Chebyshev points.

    The points cover [-R, R] with R a Cauchy root bound of ``y``.
    """
    fc = y.float_coeffs
    radius = 1.0 + float(np.max(np.abs(fc[:-1] / fc[-1]))) if y.degree > 0 else 1.0
    npts = 4 * max(y.degree, 0) + 8
    xs = radius * np.cos(np.pi * (np.arange(npts) + 0.5) / npts)
    d1 = y.deriv()
    pairs = ((p2, d1.deriv()), (p1, d1), (p0, y))
    terms = [npoly.polyval(xs, a.float_coeffs) * npoly.polyval(xs, b.float_coeffs) for a, b in pairs]
    scale = np.maximum(sum(np.abs(t) for t in terms), np.finfo(float).tiny)
    return float(np.max(np.abs(sum(terms)) / scale))


def solve_polynomial_ode(
    p2: Polynomial, p1: Polynomial, p0: Polynomial, degree: int, *, exact: bool
) -> tuple[Polynomial, dict]:
    """Unique (up to scale) degree-``degree`` polynomial solution, monic.

    Raises NullspaceDimensionError unless the kernel is certified to be
    exactly one-dimensional and its generator has full degree. On the floating
    path the generator must also satisfy the ODE pointwise to
    ODE_RESIDUAL_RTOL relative to the size of its terms.
    """
    cols, nrows = ode_matrix(p2, p1, p0, degree)
    info: dict = {"method": "exact" if exact else "svd", "unknowns": degree + 1, "equations": nrows}
    if exact:
        if not all(c.exact for c in (p2, p1, p0)):
            raise ValueError("exact solve requested for a floating operator")
        rows = [[c.coeffs[i] if i < len(c.coeffs) else Fraction(0) for c in cols] for i in range(nrows)]
        basis = exact_nullspace(rows, degree + 1)
        info["dimension"] = len(basis)
        if len(basis) != 1:
            raise NullspaceDimensionError(
                f"certified nullspace has dimension {len(basis)}, expected 1", dimension=len(basis)
            )
        v = basis[0]
    else:
        mat = np.zeros((nrows, degree + 1))
        for j, c in enumerate(cols):
            fc = c.float_coeffs
            mat[: len(fc), j] = fc
        reference = max(float(np.max(np.abs(c.float_coeffs))) for c in (p2, p1, p0) if c.degree >= 0)
        v, sv = svd_null_vector(mat, reference)
        info["dimension"] = 1
        info["singular_values"] = sv.tolist()
        # full degree is judged in the equilibrated coordinates of the SVD
        weighted = np.abs(v) * np.linalg.norm(mat, axis=0)
        if degree > 0 and weighted[-1] <= 1e-12 * weighted.max():
            raise NullspaceDimensionError(f"kernel generator has degree below {degree}", dimension=1)
        v = list(v)
    if v[-1] == 0:
        raise NullspaceDimensionError(f"kernel generator has degree below {degree}", dimension=1)
    lead = v[-1]
    y = Polynomial([x / lead for x in v])
    if not exact and degree > 0:
        res = ode_relative_residual(p2, p1, p0, y)
        info["relative_residual"] = res
        if res > ODE_RESIDUAL_RTOL:
            raise NullspaceDimensionError(
                f"no kernel: candidate generator has relative ODE residual {res:.3e}", dimension=0
            )
    return y, info


def _taylor_radius_bound(derivs: list[np.ndarray], r: float) -> float:
    total = 0.0
    fact = 1.0
    for j, d in enumerate(derivs[1:], start=1):
        fact *= j
        total += abs(d) / fact * r**j
    return total


@lru_cache(maxsize=512)
def _certify_sign_cached(coeffs: tuple, lo: float, hi: float, min_width: float) -> int:
    p = Polynomial(coeffs)
    derivs = [p]
    for _ in range(p.degree):
        derivs.append(derivs[-1].deriv())
    abs_coeffs = np.abs(p.float_coeffs)
    powers = np.arange(len(abs_coeffs))
    sign = 0
    stack = [(lo, hi)]
    n_checked = 0
    while stack:
        u, v = stack.pop()
        c = 0.5 * (u + v)
        r = 0.5 * (v - u)
        vals = [float(d(c)) for d in derivs]
        # Horner rounding error at c, generously inflated
        slack = 1e-13 * (p.degree + 1) * float(np.sum(abs_coeffs * abs(c) ** powers))
        bound = _taylor_radius_bound(vals, r) + slack
        n_checked += 1
        if abs(vals[0]) > bound:
            s = 1 if vals[0] > 0 else -1
            if sign == 0:
                sign = s
            elif s != sign:
                return 0
            continue
        if v - u <= min_width or n_checked > 200000:
            return 0
        stack.append((c, v))
        stack.append((u, c))
    return sign


def certify_sign(p: Polynomial, lo: float, hi: float | None, *, min_width: float = 1e-6) -> int:
    """Certified constant sign (+1/-1) of ``p`` on [lo, hi] (hi=None: [lo, inf)).

    Interval subdivision with Taylor-remainder sign certificates; beyond a
    Cauchy root bound the sign of the leading coefficient decides.
    Raises SingularExtensionError when no certificate is found.
    """
    if p.degree <= 0:
        if p.degree < 0 or p.coeffs[0] == 0:
            raise SingularExtensionError("zero polynomial has no sign")
        return 1 if p.coeffs[0] > 0 else -1
    if hi is None:
        fc = p.float_coeffs
        cauchy = 1.0 + float(np.max(np.abs(fc[:-1] / fc[-1])))
        hi_eff = max(lo, 0.0) + cauchy + abs(lo)
        tail = 1 if fc[-1] > 0 else -1
    else:
        hi_eff = hi
        tail = None
    sign = _certify_sign_cached(tuple(float(c) for c in p.coeffs), float(lo), float(hi_eff), min_width)
    if sign == 0 or (tail is not None and tail != sign):
        raise SingularExtensionError(
            f"polynomial may vanish on [{lo}, {'inf' if hi is None else hi}]: no sign certificate"
        )
    return sign
