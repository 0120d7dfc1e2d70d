import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dunklext.angular_ext import (
    AngularExtension,
    KTerm,
    extended_angular_state,
    extended_angular_states,
    f_component,
    f_term,
    f_term_derivative,
    k_term,
    k_term_polar,
    l_term,
    pt1_extended_potential,
    pt1_potential,
    resolve_coupling,
    x1_denominator,
    x1_jacobi,
)
from dunklext.errors import DegenerateParametersError, NullspaceDimensionError, SingularExtensionError
from dunklext.params import SECTORS, Parameters, SectorLabel
from dunklext.quasiforms import AngularForm, angular_jet
from dunklext.verify.battery import test_battery as battery
from dunklext.verify.quadrature import converged_gram

P = Parameters(Fraction(13, 10), Fraction(7, 10))


def test_pt1_examples():
    x = math.pi / 4
    expected = pt1_potential(1.5, 0.75, x) + 8 * 1.25 / 1.25 - 8 * 2 * 0.5 / 1.25**2
    assert pt1_extended_potential(1.5, 0.75, x) == pytest.approx(expected)
    assert pt1_extended_potential(1.5, 0.75, x) == pytest.approx(4.005)
    with pytest.raises(DegenerateParametersError):
        pt1_extended_potential(1.0, 1.0, 0.3)
    assert np.isfinite(pt1_extended_potential(2.0, 0.6, np.linspace(0.1, 1.4, 9))).all()
    with pytest.raises(SingularExtensionError):
        pt1_extended_potential(2.0, 0.4, 0.3)


def test_k_term_examples():
    assert k_term(0.9, 0.9, 0.3, 1.2) == pytest.approx(0.0, abs=1e-14)
    # (m1 + m2 - 1)/(2 m2 - 1) - (2 m1 - 1)(2 m2 - 1)/(2 m2 - 1)^2 at (1, 0)
    assert k_term(1.3, 0.7, 1.0, 0.0) == pytest.approx(1.0 / 0.4 - 1.6 * 0.4 / 0.16)
    with pytest.raises(SingularExtensionError):
        KTerm(0.3, 0.8)


@given(st.floats(-1.5, 3), st.floats(-1.5, 3), st.floats(0.1, 3), st.floats(0, 2 * math.pi))
def test_k_forms_agree(m1, m2, rho, phi):
    if (2 * m1 - 1) * (2 * m2 - 1) <= 1e-3:
        return
    x1, x2 = rho * math.cos(phi), rho * math.sin(phi)
    vals = [k_term(m1, m2, x1, x2, f) for f in (0, 1, 2)] + [k_term_polar(m1, m2, rho, phi)]
    scale = max(1.0, max(abs(v) for v in vals))
    assert max(vals) - min(vals) <= 1e-11 * scale


def test_l_term_identities():
    x1, x2 = 0.7, -1.1
    total = sum(l_term(p, q, P, x1, x2) for p in (0, 1) for q in (0, 1))
    assert total == pytest.approx(4 * k_term(1.3, 0.7, x1, x2))
    sym = Parameters(0.8, 0.8)
    assert l_term(0, 0, sym, x1, x2) == pytest.approx(k_term(1.8, 0.8, x1, x2) + k_term(0.8, 1.8, x1, x2))


def test_f_terms():
    assert f_component(1, 0.9, 0.9, 0.4, 0.7) == 0
    assert f_component(1, 0.7, 1.3, 1.0, 1.0) == pytest.approx(0.3)
    h = 1e-5
    for i in (1, 2):
        x = (0.6, -0.9)
        xp = (x[0] + h, x[1]) if i == 1 else (x[0], x[1] + h)
        xm = (x[0] - h, x[1]) if i == 1 else (x[0], x[1] - h)
        fd = (f_term(i, P, *xp) - f_term(i, P, *xm)) / (2 * h)
        assert f_term_derivative(i, P, *x) == pytest.approx(fd, rel=1e-7)


@pytest.mark.parametrize("a, b", [(1.0, 0.3), (Fraction(7, 10), Fraction(1, 5)), (0.4, 2.3)])
@pytest.mark.parametrize("nu", [0, 1, 2, 3])
def test_x1_jacobi_solves_extended_pt1(a, b, nu):
    P_hat, info = x1_jacobi(nu + 1, a, b)
    assert P_hat.degree == nu + 1 and info["dimension"] == 1 and P_hat.lc > 0
    A, B = float(a) + 0.5, float(b) + 0.5
    g = AngularForm(1.0, A, B, P_hat, x1_denominator(A, B))
    x = np.linspace(0.1, 1.45, 11)
    f, _, f2 = angular_jet(g, x)
    r = -f2 + pt1_extended_potential(A, B, x) * f - (A + B + 2 * nu) ** 2 * f
    assert np.max(np.abs(r)) < 1e-9 * max(1, np.max(np.abs(f)) * (A + B + 2 * nu) ** 2)


def test_x1_jacobi_errors():
    with pytest.raises(DegenerateParametersError):
        x1_jacobi(2, 0.5, 0.5)
    for offset in (Fraction(1, 1000), 1e-3):
        with pytest.raises(NullspaceDimensionError):
            x1_jacobi(2, 1.0 if isinstance(offset, float) else Fraction(1), Fraction(3, 10) if not isinstance(offset, float) else 0.3, energy_offset=offset, normalize=False)


def test_extended_angular_examples():
    s = extended_angular_state(SectorLabel(0, 0), 0, P)
    assert s.Msq == 0
    assert abs(s.quadrature_norm - 1) < 1e-9
    assert s.form.den.degree == 1 and s.form.num.degree == 1
    with pytest.raises(DegenerateParametersError):
        extended_angular_state(SectorLabel(0, 0), 0, Parameters(0.9, 0.9))


@pytest.mark.parametrize("mu", [(Fraction(13, 10), Fraction(7, 10)), (1.2, 0.8), (0.6, 2.4)])
def test_extended_grams_and_spectrum(mu):
    p = Parameters(*mu)
    states = extended_angular_states(p, 3)
    for s in states:
        n = s.n
        assert s.Msq == pytest.approx(float(4 * n * (n + Fraction(p.total))) if p.exact else 4 * float(n) * (float(n) + sum(p.as_floats())), abs=0)
        assert s.form.num.degree == int(n + 1 - Fraction(s.sector.eps1 + s.sector.eps2, 2))
    for sec in SECTORS:
        G, _ = converged_gram([s.form for s in states if s.sector == sec], p)
        assert np.max(np.abs(G - np.eye(len(G)))) < 1e-8


def test_coupling_resolution():
    res = resolve_coupling(Parameters(1.2, 0.8))
    assert res.coupling == 1.0
    assert res.gap_orders >= 6


@pytest.mark.parametrize("coupling", [0.5, 1.0])
def test_operator_forms_agree(coupling):
    ext = AngularExtension(Parameters(1.7, 0.9), coupling)
    rng = np.random.default_rng(3)
    for f in battery(1)[:8]:
        for _ in range(5):
            r, t = rng.uniform(0.4, 2.2), rng.uniform(0.1, 1.4) + rng.integers(4) * math.pi / 2
            x1, x2 = r * math.cos(t), r * math.sin(t)
            a = ext.apply_projector_form(f, x1, x2)
            assert ext.apply_l_form(f, x1, x2) == pytest.approx(a, rel=1e-9, abs=1e-9)
            assert ext.apply_dhat_form(f, x1, x2) == pytest.approx(a, rel=1e-9, abs=1e-9)


def test_extension_admissibility():
    with pytest.raises(DegenerateParametersError):
        AngularExtension(Parameters(0.9, 0.9), 1.0)
    with pytest.raises(SingularExtensionError):
        AngularExtension(Parameters(0.3, 0.7), 1.0)
