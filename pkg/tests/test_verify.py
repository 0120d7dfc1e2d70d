import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.special import roots_genlaguerre, roots_jacobi

from dunklext.basestates import angular_state, assemble, eval_wavefunction, radial_state
from dunklext.errors import DomainError, StencilDomainError
from dunklext.params import ExtensionSpec, Parameters, QuantumNumbers, SectorLabel
from dunklext.quasiforms import AngularForm
from dunklext.radial_ext import extended_potential, g_factor
from dunklext.verify.oracles import fd_cartesian_hamiltonian, fd_convergence_order, grid_spectrum_oracle
from dunklext.verify.quadrature import (
    angular_gram,
    angular_mass,
    converged_gram,
    gauss_rule,
    jacobi_family,
    laguerre_family,
)
from dunklext.verify.report import VerificationReport, planar_samples, residual_scan

P = Parameters(Fraction(3, 10), Fraction(7, 10))


def test_gauss_trivial_rule():
    r = gauss_rule(laguerre_family(0.0), 1)
    assert r.nodes[0] == pytest.approx(1.0) and r.weights[0] == pytest.approx(1.0)


@given(st.floats(-0.9, 6), st.integers(0, 6))
def test_laguerre_moments(a, j):
    r = gauss_rule(laguerre_family(a), 8)
    exact = math.exp(math.lgamma(a + j + 1))
    assert r.integrate(r.nodes**j) == pytest.approx(exact, rel=1e-12)


@given(st.floats(-0.9, 4), st.floats(-0.9, 4), st.integers(0, 6))
def test_jacobi_moments_vs_scipy(a, b, j):
    r = gauss_rule(jacobi_family(a, b), 9)
    x, w = roots_jacobi(9, a, b)
    assert r.integrate(r.nodes**j) == pytest.approx(float(np.dot(w, x**j)), rel=1e-11, abs=1e-12)


def test_rules_match_scipy():
    r = gauss_rule(laguerre_family(1.3), 20)
    x, w = roots_genlaguerre(20, 1.3)
    np.testing.assert_allclose(r.nodes, x, rtol=1e-12)
    np.testing.assert_allclose(r.weights, w, rtol=1e-10, atol=1e-300)
    fam = jacobi_family(0.4, -0.3)
    assert gauss_rule(fam, 5).weights.sum() == pytest.approx(fam.mass(), rel=1e-13)


def test_angular_mass():
    assert angular_mass(Parameters(0.5, 0.5)) == pytest.approx(2.0)
    G = angular_gram([AngularForm(1.0)], P)
    assert G[0, 0] == pytest.approx(angular_mass(P), rel=1e-13)


def test_cross_sector_blocks_vanish():
    a = angular_state(SectorLabel(1, 0), Fraction(1, 2), P)
    b = angular_state(SectorLabel(0, 1), Fraction(1, 2), P)
    assert abs(angular_gram([a, b], P)[0, 1]) < 1e-15


def test_doubling_invariant():
    forms = [radial_state(k, 1, P) for k in range(5)]
    G, N = converged_gram(forms, P)
    from dunklext.verify.quadrature import gram_matrix

    assert np.max(np.abs(gram_matrix(forms, P, 2 * N) - G)) <= 1e-11


def test_report_pass_flag():
    r = VerificationReport("x", {}, 1e-3, 1e-2)
    assert r.passed and r.to_json()["pass"]
    assert not VerificationReport("x", {}, math.nan, 1.0).passed
    assert set(r.to_json()) == {"check", "params", "deviation", "tolerance", "pass", "seed", "nodes"}


def test_residual_scan_sensitivity():
    s = assemble(QuantumNumbers(SectorLabel(0, 0), 0, 0), P)
    from dunklext.quasiforms import apply_radial_operator

    rho = np.linspace(0.1, 4, 30)
    f, Hf = s.radial(rho), apply_radial_operator(s.radial, P, 0, None, rho)
    assert residual_scan(f, Hf, s.energy, check="ok", tolerance=1e-11).passed
    bad = residual_scan(f, Hf, s.energy + 1e-3, check="bad", tolerance=1e-9)
    assert not bad.passed and bad.deviation == pytest.approx(1e-3, rel=1e-6)


def test_samples_reproducible_and_off_axis():
    a, b = planar_samples(25, 7), planar_samples(25, 7)
    assert np.array_equal(a, b)
    assert np.all(np.abs(a) > 0.05)


def test_fd_oracle_plain_oscillator():
    psi = lambda x1, x2: math.exp(-(x1 * x1 + x2 * x2) / 2)  # noqa: E731
    assert fd_cartesian_hamiltonian(psi, Parameters(0, 0), None, 0.4, -0.9) == pytest.approx(psi(0.4, -0.9), rel=1e-9)


def test_fd_oracle_base_state_and_order():
    s = assemble(QuantumNumbers(SectorLabel(1, 1), 4, 1), P)
    psi = lambda a, b: eval_wavefunction(s, a, b)  # noqa: E731
    x = (0.8, -1.1)
    exact = s.energy * psi(*x)
    assert fd_cartesian_hamiltonian(psi, P, None, *x) == pytest.approx(exact, abs=1e-5)
    assert fd_convergence_order(psi, P, exact, *x) >= 3.5
    with pytest.raises(StencilDomainError):
        fd_cartesian_hamiltonian(psi, P, None, 0.01, 1.0)


def test_grid_oracle_base_and_extended():
    base = grid_spectrum_oracle(lambda r: 0.5 * r * r, P, 0, count=3)
    np.testing.assert_allclose(base, [2.0, 4.0, 6.0], atol=1e-4)
    a = 2 * 1 + 1.0
    g = g_factor(ExtensionSpec("III", 2), a)
    ext = grid_spectrum_oracle(lambda r: extended_potential(g, r), P, 1, count=3)
    np.testing.assert_allclose(ext, [a + 1 - 4, a + 3, a + 5], atol=1e-4)
    with pytest.raises(DomainError):
        grid_spectrum_oracle(lambda r: r, P, 0, grid=(12.0, 5000))
