from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dunklext.algebra import (
    ODE_RESIDUAL_RTOL,
    certify_sign,
    exact_nullspace,
    ode_relative_residual,
    solve_polynomial_ode,
    svd_null_vector,
)
from dunklext.errors import NullspaceDimensionError, SingularExtensionError
from dunklext.orthopoly import Polynomial, laguerre


def test_exact_nullspace_dimensions():
    rows = [[Fraction(1), Fraction(2), Fraction(3)], [Fraction(2), Fraction(4), Fraction(6)]]
    basis = exact_nullspace(rows, 3)
    assert len(basis) == 2
    for v in basis:
        assert all(sum(r[i] * v[i] for i in range(3)) == 0 for r in rows)


def test_svd_gap_certificate():
    a = np.array([[1.0, 0, 0], [0, 1.0, 0]])
    v, _ = svd_null_vector(a)
    assert abs(abs(v[2]) - 1) < 1e-12
    with pytest.raises(NullspaceDimensionError) as e:
        svd_null_vector(np.eye(3))
    assert e.value.dimension == 0
    with pytest.raises(NullspaceDimensionError) as e:
        svd_null_vector(np.array([[1.0, 0, 0]]))
    assert e.value.dimension == 2


@given(st.integers(0, 7), st.fractions(Fraction(-9, 10), 6, max_denominator=10))
def test_laguerre_equation_kernel_is_laguerre(k, a):
    # z y'' + (a + 1 - z) y' + k y = 0
    z = Polynomial([0, 1])
    y, info = solve_polynomial_ode(z, a + 1 - z, Polynomial([k]), k, exact=True)
    assert info["dimension"] == 1
    ref = laguerre(k, a)
    assert y == ref.scale(1 / ref.lc)


def test_off_spectrum_has_no_kernel():
    z = Polynomial([0, 1])
    with pytest.raises(NullspaceDimensionError):
        solve_polynomial_ode(z, Fraction(3, 2) - z, Polynomial([Fraction(3001, 1000)]), 3, exact=True)


@pytest.mark.parametrize("k", [8, 11])
def test_float_off_spectrum_high_degree_rejected(k):
    # near-miss kernels of the non-normal monomial operator pass the gap test alone
    a = 7.3
    z = Polynomial([0.0, 1.0])
    y, info = solve_polynomial_ode(z, Polynomial([a + 1, -1.0]), Polynomial([float(k)]), k, exact=False)
    assert info["relative_residual"] <= ODE_RESIDUAL_RTOL
    with pytest.raises(NullspaceDimensionError):
        solve_polynomial_ode(z, Polynomial([a + 1, -1.0]), Polynomial([k + 1e-3]), k, exact=False)


def test_relative_residual_of_laguerre():
    z = Polynomial([0, 1])
    y = laguerre(6, Fraction(1, 3))
    assert ode_relative_residual(z, Fraction(4, 3) - z, Polynomial([6]), y) < 1e-13
    assert ode_relative_residual(z, Fraction(4, 3) - z, Polynomial([5]), y) > 1e-3


def test_certify_sign():
    assert certify_sign(Polynomial([1, 0, 1]), -5, 5) == 1
    assert certify_sign(Polynomial([-2, -1]), 0, None) == -1
    with pytest.raises(SingularExtensionError):
        certify_sign(Polynomial([-1, 0, 1]), 0, None)
    # no real roots but a close complex pair
    assert certify_sign(Polynomial([1.0001, -2, 1]), 0, None) == 1
