import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dunklext.errors import DomainError, ParityError, SingularExtensionError
from dunklext.orthopoly import Polynomial
from dunklext.params import Parameters, SectorLabel
from dunklext.quasiforms import (
    AngularForm,
    RadialForm,
    angular_jet,
    apply_angular_operator,
    eval_radial,
    radial_jet,
)


def richardson_derivs(f, x, h=1e-3):
    d1 = lambda h: (f(x + h) - f(x - h)) / (2 * h)  # noqa: E731
    d2 = lambda h: (f(x + h) - 2 * f(x) + f(x - h)) / h**2  # noqa: E731
    return (4 * d1(h / 2) - d1(h)) / 3, (4 * d2(h / 2) - d2(h)) / 3


@given(st.floats(0.2, 3.0), st.floats(0, 3), st.booleans())
def test_radial_jet_matches_fd(rho, s, gauss):
    f = RadialForm(1.3, s, gauss, Polynomial([1, -0.5, 0.2]), Polynomial([2.0, 1.0]))
    _, d1, d2 = radial_jet(f, rho)
    r1, r2 = richardson_derivs(lambda r: eval_radial(f, r), rho)
    assert d1 == pytest.approx(r1, rel=1e-6, abs=1e-7)
    assert d2 == pytest.approx(r2, rel=1e-5, abs=1e-6)


@given(st.floats(0.05, 6.2), st.sampled_from([(0, 0), (1, 0), (0, 1), (1, 1), (1.3, 0.7)]))
def test_angular_jet_matches_fd(phi, ab):
    a, b = ab
    if a % 1 or b % 1:
        if min(abs(np.cos(phi)), abs(np.sin(phi))) < 0.05:
            return
    g = AngularForm(0.8, a, b, Polynomial([0.3, -1, 0.5]), Polynomial([2.0, 0.5]))
    _, d1, d2 = angular_jet(g, phi)
    r1, r2 = richardson_derivs(lambda x: float(angular_jet(g, x)[0]), phi)
    assert d1 == pytest.approx(r1, rel=1e-6, abs=1e-7)
    assert d2 == pytest.approx(r2, rel=1e-5, abs=1e-6)


def test_integer_exponents_are_smooth_on_axes():
    g = AngularForm(1.0, 1, 1)
    vals = angular_jet(g, np.array([0.0, np.pi / 2]))
    assert np.all(np.isfinite(vals))


def test_singular_denominators_rejected():
    with pytest.raises(SingularExtensionError):
        RadialForm(1.0, 0, True, Polynomial([1]), Polynomial([-1, 1]))
    with pytest.raises(SingularExtensionError):
        AngularForm(1.0, 0, 0, Polynomial([1]), Polynomial([0.5, 1.0]))


def test_radial_domain():
    with pytest.raises(DomainError):
        eval_radial(RadialForm(1.0, 0), 0.0)


def test_parity_mismatch():
    p = Parameters(0.3, 0.7)
    with pytest.raises(ParityError):
        apply_angular_operator(AngularForm(1.0, 1, 0), p, SectorLabel(0, 0), None, 0.4)
