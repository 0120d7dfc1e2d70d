"""Verification reports and seeded sample sets."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import qmc

from ..params import Parameters

__all__ = ["VerificationReport", "residual_scan", "planar_samples", "angle_samples", "radius_samples", "RESIDUAL_FLOOR"]

RESIDUAL_FLOOR = 1e-12


@dataclass(frozen=True)
class VerificationReport:
    check: str
    params: dict
    deviation: float
    tolerance: float
    seed: int | None = None
    nodes: int | None = None
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(math.isfinite(self.deviation) and self.deviation <= self.tolerance)

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "params": self.params,
            "deviation": self.deviation,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "seed": self.seed,
            "nodes": self.nodes,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _params_dict(p: Parameters | dict | None) -> dict:
    if p is None:
        return {}
    if isinstance(p, Parameters):
        return p.to_dict()
    return dict(p)


def residual_scan(
    values,
    applied,
    eigenvalue: float,
    *,
    check: str,
    tolerance: float,
    params: Parameters | dict | None = None,
    seed: int | None = None,
    floor: float = RESIDUAL_FLOOR,
) -> VerificationReport:
    """max |(Op - lambda) f| over the samples, relative to max(sup |f|, floor)."""
    f = np.asarray(values, dtype=float)
    r = np.asarray(applied, dtype=float) - eigenvalue * f
    scale = max(float(np.max(np.abs(f))), floor)
    dev = float(np.max(np.abs(r))) / scale
    return VerificationReport(check, _params_dict(params), dev, tolerance, seed, int(f.size))


def _halton(dim: int, count: int, seed: int) -> np.ndarray:
    return qmc.Halton(d=dim, scramble=True, seed=seed).random(count)


def planar_samples(
    count: int, seed: int, rho_range=(0.3, 3.0), axis_margin: float = 0.05
) -> np.ndarray:
    """Seeded quasi-random points (x1, x2) in an annulus, off the coordinate axes."""
    pts = []
    draw = max(2 * count, 16)
    offset = 0
    while len(pts) < count:
        u = _halton(2, draw + offset, seed)[offset:]
        offset += draw
        rho = rho_range[0] + (rho_range[1] - rho_range[0]) * u[:, 0]
        phi = 2 * np.pi * u[:, 1]
        x1, x2 = rho * np.cos(phi), rho * np.sin(phi)
        ok = (np.abs(x1) > axis_margin) & (np.abs(x2) > axis_margin)
        pts.extend(zip(x1[ok], x2[ok]))
    return np.array(pts[:count])


def angle_samples(count: int, seed: int, margin: float = 0.05) -> np.ndarray:
    """Seeded angles in (0, 2 pi) at least ``margin`` away from the axes."""
    u = _halton(1, count, seed)[:, 0]
    quadrant = np.floor(4 * u)
    frac = 4 * u - quadrant
    return quadrant * np.pi / 2 + margin + frac * (np.pi / 2 - 2 * margin)


def radius_samples(count: int, seed: int, lo: float = 0.05, hi: float = 4.0) -> np.ndarray:
    u = _halton(1, count, seed)[:, 0]
    return lo + (hi - lo) * u
