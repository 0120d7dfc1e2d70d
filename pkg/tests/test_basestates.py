import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.special import eval_genlaguerre, eval_jacobi

from dunklext.basestates import (
    angular_state,
    assemble,
    eval_wavefunction,
    radial_state,
    separation_constant,
)
from dunklext.errors import DomainError
from dunklext.params import SECTORS, Parameters, QuantumNumbers, SectorLabel, admissible_n2
from dunklext.quasiforms import (
    AngularForm,
    RadialForm,
    apply_angular_operator,
    apply_radial_operator,
    eval_angular,
    eval_radial,
)
from dunklext.verify.quadrature import converged_gram

P = Parameters(Fraction(3, 10), Fraction(7, 10))


def test_trivial_form_values():
    assert eval_radial(RadialForm(1.0, 0), 1.0, 2) == pytest.approx(0.0, abs=1e-15)
    assert eval_radial(RadialForm(1.0, 2, False), 3.0, 1) == pytest.approx(6.0)
    assert eval_angular(AngularForm(1.0, 1, 0), 0.4, 2) == pytest.approx(-math.cos(0.4))
    from dunklext.orthopoly import Polynomial

    assert eval_angular(AngularForm(1.0, 0, 0, Polynomial([0, 1])), math.pi / 4) == pytest.approx(0.0, abs=1e-15)


def test_operator_trivial_cases():
    p0 = Parameters(0, 0)
    assert apply_radial_operator(RadialForm(1.0, 0, False), p0, 0, None, 1.7) == pytest.approx(0.5 * 1.7**2)
    assert apply_angular_operator(AngularForm(1.0), p0, SectorLabel(0, 0), None, 0.3) == pytest.approx(0.0)


def test_ground_angular_constant():
    g = angular_state(SectorLabel(0, 0), 0, P)
    c = math.sqrt(math.gamma(2.0) / (2 * math.gamma(0.8) * math.gamma(1.2)))
    assert eval_angular(g, 0.37) == pytest.approx(c, rel=1e-14)
    assert eval_angular(angular_state(SectorLabel(0, 0), 0, Parameters(0, 0)), 1.0) == pytest.approx(
        1 / math.sqrt(2 * math.pi)
    )


def test_separation_constants():
    assert separation_constant(0, P) == 0
    assert separation_constant(Fraction(1, 2), P) == 3
    assert separation_constant(2, Parameters(0, 0)) == 16


def test_radial_ground():
    f = radial_state(0, 0, P)
    assert f.c == pytest.approx(math.sqrt(2 / math.gamma(2.0)))
    g = radial_state(0, 0, Parameters(0, 0))
    assert g.c == pytest.approx(math.sqrt(2))


def test_energies():
    assert assemble(QuantumNumbers(SectorLabel(0, 0), 0, 0), P).energy == pytest.approx(2.0)
    assert assemble(QuantumNumbers(SectorLabel(0, 0), 2, 1), Parameters(0, 0)).energy == 5
    st_ = assemble(QuantumNumbers(SectorLabel(1, 0), 3, 2), P)
    assert st_.energy == pytest.approx(9.0)


def test_angular_gram_all_sectors():
    forms = [
        angular_state(s, Fraction(n2, 2), P) for s in SECTORS for n2 in range(7) if admissible_n2(s, n2)
    ]
    G, _ = converged_gram(forms, P)
    assert np.max(np.abs(G - np.eye(len(forms)))) < 1e-9


@pytest.mark.parametrize("mu", [(0.3, 0.7), (0.25, 0.6), (-0.4, 2.1)])
@pytest.mark.parametrize("n", [0, Fraction(1, 2), 1, Fraction(5, 2)])
def test_radial_gram(mu, n):
    p = Parameters(*mu)
    G, _ = converged_gram([radial_state(k, n, p) for k in range(7)], p)
    assert np.max(np.abs(G - np.eye(7))) < 1e-10


states = st.builds(
    lambda s, n2, k: (s, n2 + (s.eps1 + s.eps2) % 2 if (n2 - s.eps1 - s.eps2) % 2 else n2, k),
    st.sampled_from(SECTORS),
    st.integers(2, 8),
    st.integers(0, 5),
)


@given(states, st.floats(-0.45, 2.5), st.floats(-0.45, 2.5))
def test_eigen_residuals(label, mu1, mu2):
    sec, n2, k = label
    if not admissible_n2(sec, n2):
        n2 += 1
    p = Parameters(mu1, mu2)
    s = assemble(QuantumNumbers(sec, n2, k), p)
    rho = np.linspace(0.2, 4.0, 15)
    phi = np.linspace(0.1, 6.1, 15)
    r = apply_radial_operator(s.radial, p, s.Msq, None, rho) - s.energy * s.radial(rho)
    a = apply_angular_operator(s.angular, p, sec, None, phi) - 0.5 * s.Msq * s.angular(phi)
    assert np.max(np.abs(r)) <= 1e-9 * max(1, np.max(np.abs(s.radial(rho))))
    assert np.max(np.abs(a)) <= 1e-9 * max(1, np.max(np.abs(s.angular(phi))))


def test_parity_of_wavefunctions():
    g = assemble(QuantumNumbers(SectorLabel(0, 0), 0, 0), P)
    assert eval_wavefunction(g, 1, 1) == pytest.approx(eval_wavefunction(g, -1, 1))
    o = assemble(QuantumNumbers(SectorLabel(1, 0), 3, 1), P)
    assert eval_wavefunction(o, 0.7, 0.4) == pytest.approx(-eval_wavefunction(o, -0.7, 0.4))
    with pytest.raises(DomainError):
        eval_wavefunction(g, 0.0, 0.0)


def test_wavefunction_direct_polar():
    s = assemble(QuantumNumbers(SectorLabel(1, 1), 4, 2), P)
    mu1, mu2 = 0.3, 0.7
    phi = math.atan2(0.8, 0.6)
    # independent evaluation from scipy special functions
    c_r = math.sqrt(2 * math.factorial(2) / math.gamma(2 + 4 + 1 + 1))
    R = c_r * math.exp(-0.5) * eval_genlaguerre(2, 5.0, 1.0)
    nu = 1
    logc = (
        math.log(2 * 2 + 1)
        + math.lgamma(2 + 1 + 1)
        + math.lgamma(nu + 1)
        - math.log(2)
        - math.lgamma(2 + mu1 + 0.5)
        - math.lgamma(2 + mu2 + 0.5)
    )
    Phi = math.exp(0.5 * logc) * math.cos(phi) * math.sin(phi) * eval_jacobi(nu, mu1 + 0.5, mu2 + 0.5, -math.cos(2 * phi))
    assert eval_wavefunction(s, 0.6, 0.8) == pytest.approx(R * Phi, rel=1e-12)
