"""The full verification bundle behind ``dunklext verify``."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .angular_ext import (
    AngularExtension,
    check_angular_admissible,
    extended_angular_states,
    resolve_coupling,
)
from .basestates import angular_state, assemble, eval_wavefunction, radial_state, separation_constant
from .params import SECTORS, ExtensionSpec, Parameters, QuantumNumbers, SectorLabel, admissible_n2
from .quasiforms import apply_angular_operator, apply_radial_operator
from .radial_ext import admissible_k, extended_potential, extended_radial_state, extension_term, g_factor
from .verify.battery import test_battery
from .verify.oracles import fd_cartesian_hamiltonian, grid_spectrum_oracle
from .verify.quadrature import converged_gram
from .verify.report import VerificationReport, angle_samples, planar_samples, radius_samples, residual_scan

__all__ = ["SuiteConfig", "DEFAULT_TOLERANCES", "run_suite"]

DEFAULT_TOLERANCES = {
    "gram_angular": 1e-9,
    "gram_radial": 1e-10,
    "residual": 1e-9,
    "fd": 1e-5,
    "grid": 1e-4,
    "gram_extended": 1e-8,
    "triangle": 1e-9,
}


@dataclass(frozen=True)
class SuiteConfig:
    params: Parameters
    seed: int = 0
    tolerance: float | None = None  # overrides every default when set
    ext: ExtensionSpec = field(default_factory=lambda: ExtensionSpec("I", 1))
    angular_ext: bool = False
    n_max: Fraction = Fraction(3)
    k_max: int = 6

    def tol(self, key: str) -> float:
        return self.tolerance if self.tolerance is not None else DEFAULT_TOLERANCES[key]


def _gram_report(check, G, N, tol, p, seed) -> VerificationReport:
    dev = float(np.max(np.abs(G - np.eye(len(G))))) if len(G) else 0.0
    return VerificationReport(check, p.to_dict(), dev, tol, seed, N)


def _base_angular_gram(cfg: SuiteConfig) -> VerificationReport:
    p = cfg.params
    forms = [
        angular_state(sec, Fraction(n2, 2), p)
        for sec in SECTORS
        for n2 in range(int(2 * cfg.n_max) + 1)
        if admissible_n2(sec, n2)
    ]
    G, N = converged_gram(forms, p)
    return _gram_report("gram.base.angular", G, N, cfg.tol("gram_angular"), p, cfg.seed)


def _base_radial_gram(cfg: SuiteConfig) -> list[VerificationReport]:
    p = cfg.params
    out = []
    for n in (Fraction(0), Fraction(1, 2), Fraction(3, 2)):
        forms = [radial_state(k, n, p) for k in range(cfg.k_max + 1)]
        G, N = converged_gram(forms, p)
        out.append(_gram_report(f"gram.base.radial[n={n}]", G, N, cfg.tol("gram_radial"), p, cfg.seed))
    return out


def _sample_states(cfg: SuiteConfig, count: int) -> list[QuantumNumbers]:
    rng = np.random.default_rng(cfg.seed)
    out = []
    while len(out) < count:
        sec = SECTORS[rng.integers(4)]
        n2 = int(rng.integers(0, 7))
        if admissible_n2(sec, n2):
            out.append(QuantumNumbers(sec, n2, int(rng.integers(0, 5))))
    return out


def _base_residuals(cfg: SuiteConfig) -> list[VerificationReport]:
    p = cfg.params
    rhos = radius_samples(40, cfg.seed)
    phis = angle_samples(40, cfg.seed)
    worst_r = worst_a = 0.0
    for qn in _sample_states(cfg, 30):
        st = assemble(qn, p)
        rr = residual_scan(
            st.radial(rhos),
            apply_radial_operator(st.radial, p, st.Msq, None, rhos),
            st.energy,
            check="",
            tolerance=1.0,
        )
        ra = residual_scan(
            st.angular(phis),
            apply_angular_operator(st.angular, p, qn.sector, None, phis),
            0.5 * st.Msq,
            check="",
            tolerance=1.0,
        )
        worst_r, worst_a = max(worst_r, rr.deviation), max(worst_a, ra.deviation)
    tol = cfg.tol("residual")
    return [
        VerificationReport("residual.base.radial", p.to_dict(), worst_r, tol, cfg.seed, 30 * len(rhos)),
        VerificationReport("residual.base.angular", p.to_dict(), worst_a, tol, cfg.seed, 30 * len(phis)),
    ]


def _fd_scan(state, p, ext, points) -> float:
    psi = lambda a, b: eval_wavefunction(state, a, b)  # noqa: E731
    vals = np.array([psi(a, b) for a, b in points])
    hv = np.array([fd_cartesian_hamiltonian(psi, p, ext, a, b) for a, b in points])
    return float(np.max(np.abs(hv - state.energy * vals)) / max(np.max(np.abs(vals)), 1e-12))


def _base_fd(cfg: SuiteConfig) -> VerificationReport:
    p = cfg.params
    pts = planar_samples(10, cfg.seed)
    worst = max(_fd_scan(assemble(qn, p), p, None, pts) for qn in _sample_states(cfg, 6))
    return VerificationReport("fd.base", p.to_dict(), worst, cfg.tol("fd"), cfg.seed, 6 * len(pts))


def _grid(cfg: SuiteConfig) -> list[VerificationReport]:
    p = cfg.params
    n = Fraction(1, 2)
    a = 2 * n + p.total
    out = []
    base = grid_spectrum_oracle(lambda r: 0.5 * r * r, p, n)
    expected = [float(2 * k + a + 1) for k in range(5)]
    dev = max(abs(x - y) for x, y in zip(base, expected))
    out.append(VerificationReport("grid.base", p.to_dict(), dev, cfg.tol("grid"), cfg.seed, 3999))
    spec = cfg.ext
    try:
        g = g_factor(spec, a)
    except Exception:
        return out
    levels = grid_spectrum_oracle(lambda r: extended_potential(g, r), p, n)
    ks = [k for k in range(0, spec.m + 20) if admissible_k(spec, k)][:5]
    expected = [float(2 * k - 2 * spec.m + a + 1) for k in ks]
    dev = max(abs(x - y) for x, y in zip(levels, expected))
    out.append(VerificationReport(f"grid.radial[{spec}]", p.to_dict(), dev, cfg.tol("grid"), cfg.seed, 3999))
    return out


def _extended_radial(cfg: SuiteConfig) -> list[VerificationReport]:
    p, spec = cfg.params, cfg.ext
    n = Fraction(1, 2)
    a = 2 * n + p.total
    try:
        g = g_factor(spec, a)
    except Exception:
        return []
    ks = [k for k in range(0, spec.m + 6) if admissible_k(spec, k)]
    states = [extended_radial_state(spec, k, n, p) for k in ks]
    G, N = converged_gram([s.form for s in states], p)
    rhos = radius_samples(40, cfg.seed)
    worst = 0.0
    Msq = float(separation_constant(n, p))
    for s in states:
        rep = residual_scan(
            s.form(rhos),
            apply_radial_operator(s.form, p, Msq, lambda r: extension_term(g, r), rhos),
            s.energy,
            check="",
            tolerance=1.0,
        )
        worst = max(worst, rep.deviation)
    return [
        _gram_report(f"gram.radial[{spec}]", G, N, cfg.tol("gram_extended"), p, cfg.seed),
        VerificationReport(f"residual.radial[{spec}]", p.to_dict(), worst, cfg.tol("residual"), cfg.seed, len(ks) * 40),
    ]


def _angular(cfg: SuiteConfig) -> list[VerificationReport]:
    p = cfg.params
    check_angular_admissible(p)
    res = resolve_coupling(p)
    out = [
        VerificationReport(
            "angular.coupling",
            {**p.to_dict(), "coupling": res.coupling, "residuals": {str(k): v for k, v in res.residuals.items()}},
            res.residuals[res.coupling],
            cfg.tol("residual"),
            cfg.seed,
            res.states,
        )
    ]
    states = extended_angular_states(p, cfg.n_max)
    worst_gram, nodes = 0.0, 0
    for sec in SECTORS:
        forms = [s.form for s in states if s.sector == sec]
        G, N = converged_gram(forms, p)
        worst_gram = max(worst_gram, float(np.max(np.abs(G - np.eye(len(G))))))
        nodes = max(nodes, N)
    out.append(VerificationReport("gram.angular[X1]", p.to_dict(), worst_gram, cfg.tol("gram_extended"), cfg.seed, nodes))
    ext = AngularExtension(p, res.coupling)
    pts = planar_samples(30, cfg.seed)
    worst = 0.0
    for f in test_battery(cfg.seed):
        for a, b in pts:
            x = ext.apply_projector_form(f, a, b)
            y = ext.apply_l_form(f, a, b)
            z = ext.apply_dhat_form(f, a, b)
            worst = max(worst, abs(x - y) / max(1.0, abs(x)), abs(x - z) / max(1.0, abs(x)))
    out.append(VerificationReport("angular.operator_forms", p.to_dict(), worst, cfg.tol("triangle"), cfg.seed, 20 * len(pts)))
    from .catalog import build_state

    fd_pts = planar_samples(8, cfg.seed)
    worst = 0.0
    for sec, n, k in ((SectorLabel(0, 0), 0, 1), (SectorLabel(1, 0), Fraction(3, 2), 0), (SectorLabel(1, 1), 1, 1)):
        st = build_state(p, sec, n, k, angular_ext=True)
        worst = max(worst, _fd_scan(st, p, ext.pointwise_term, fd_pts))
    out.append(VerificationReport("fd.angular[X1]", p.to_dict(), worst, cfg.tol("fd"), cfg.seed, 3 * len(fd_pts)))
    return out


def run_suite(cfg: SuiteConfig) -> list[VerificationReport]:
    reports = [_base_angular_gram(cfg)]
    reports += _base_radial_gram(cfg)
    reports += _base_residuals(cfg)
    reports.append(_base_fd(cfg))
    reports += _grid(cfg)
    reports += _extended_radial(cfg)
    if cfg.angular_ext:
        reports += _angular(cfg)
    return reports
