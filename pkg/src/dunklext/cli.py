"""Command-line interface.

Usage:
    dunklext spectrum --mu1 0.3 --mu2 0.7 --emax 6
    dunklext spectrum --mu1 0.3 --mu2 0.7 --emax 6 --ext I:1 --format json
    dunklext verify --mu1 1.3 --mu2 0.7 --angular-ext --output report.json
    dunklext states --sector 1,0 --n 1/2 --k 0 --extent 1 --points 3

Exit codes: 0 success, 1 failed verification, 2 domain error, 3 admissibility error.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

import click

from .catalog import build_state, sample_grid, spectrum_rows
from .errors import DomainError, DunklError
from .params import ExtensionSpec, Parameters, SectorLabel

__all__ = ["cli", "RunConfig"]


@dataclass(frozen=True)
class RunConfig:
    params: Parameters
    ext: ExtensionSpec | None = None
    angular_ext: bool = False
    fmt: str = "csv"
    output: str | None = None
    seed: int = 0


def _exact(name: str, text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"{name} = {text!r} is not a finite decimal or fraction") from exc


def _config(mu1, mu2, ext, angular_ext, fmt, output, seed) -> RunConfig:
    p = Parameters(_exact("mu1", mu1), _exact("mu2", mu2))
    spec = ExtensionSpec.parse(ext) if ext else None
    return RunConfig(p, spec, angular_ext, fmt, output, seed)


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([repr(x) if isinstance(x, float) else x for x in r])
    return buf.getvalue()


def _run(fn):
    """Map package errors onto exit codes."""
    try:
        return fn()
    except DunklError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(exc.exit_code)


common = [
    click.option("--mu1", default="0.3", show_default=True, help="Dunkl parameter mu1 (> -1/2)."),
    click.option("--mu2", default="0.7", show_default=True, help="Dunkl parameter mu2 (> -1/2)."),
    click.option("--ext", default=None, help="Radial extension, e.g. I:1, II:2, III:2."),
    click.option("--angular-ext", is_flag=True, help="Use the X1-Jacobi angular extension."),
    click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True),
    click.option("--output", "-o", default=None, help="Write to this file instead of stdout."),
    click.option("--seed", default=0, show_default=True, type=int),
]


def with_common(f):
    for opt in reversed(common):
        f = opt(f)
    return f


@click.group()
@click.version_option(package_name="artifact")
def cli():
    """Rationally extended Dunkl oscillator in the plane."""


@cli.command()
@with_common
@click.option("--emax", required=True, help="Energy cap (inclusive).")
def spectrum(mu1, mu2, ext, angular_ext, fmt, output, seed, emax):
    """Tabulate (sector, n, k, M^2, energy, extension) up to an energy cap."""

    def go():
        cfg = _config(mu1, mu2, ext, angular_ext, fmt, output, seed)
        rows = spectrum_rows(cfg.params, _exact("emax", emax), cfg.ext, cfg.angular_ext)
        if fmt == "json":
            text = json.dumps([r.as_dict() for r in rows], indent=2) + "\n"
        else:
            header = ["sector", "n", "k", "Msq", "energy", "extension"]
            text = _csv(header, [[str(r.sector), str(r.n), r.k, r.Msq, r.energy, r.extension] for r in rows])
        _emit(text, output)

    _run(go)


@cli.command()
@with_common
@click.option("--tolerance", default=None, type=float, help="Override every check tolerance.")
def verify(mu1, mu2, ext, angular_ext, fmt, output, seed, tolerance):
    """Run the verification suite and write a JSON bundle; exit 1 on any failure."""
    from .suite import SuiteConfig, run_suite

    def go():
        cfg = _config(mu1, mu2, ext, angular_ext, fmt, output, seed)
        kwargs = {"ext": cfg.ext} if cfg.ext else {}
        reports = run_suite(SuiteConfig(cfg.params, seed=seed, tolerance=tolerance, angular_ext=angular_ext, **kwargs))
        ok = all(r.passed for r in reports)
        bundle = {
            "params": cfg.params.to_dict(),
            "seed": seed,
            "pass": ok,
            "reports": [r.to_json() for r in reports],
        }
        _emit(json.dumps(bundle, indent=2, sort_keys=True) + "\n", output)
        for r in reports:
            if not r.passed:
                click.echo(f"FAIL {r.check}: deviation {r.deviation:.3e} > {r.tolerance:.1e}", err=True)
        return ok

    if not _run(go):
        sys.exit(1)


@cli.command()
@with_common
@click.option("--sector", default="0,0", show_default=True, help="Parity sector eps1,eps2.")
@click.option("--n", "n", default="0", show_default=True, help="Angular quantum number (half-integer).")
@click.option("--k", "k", default=0, show_default=True, type=int, help="Radial quantum number.")
@click.option("--extent", default=2.0, show_default=True, type=float, help="Grid half-width.")
@click.option("--points", default=5, show_default=True, type=int, help="Grid points per axis.")
def states(mu1, mu2, ext, angular_ext, fmt, output, seed, sector, n, k, extent, points):
    """Sample one eigenfunction on a square grid (x1, x2, psi)."""

    def go():
        cfg = _config(mu1, mu2, ext, angular_ext, fmt, output, seed)
        st = build_state(cfg.params, SectorLabel.parse(sector), _exact("n", n), k, cfg.ext, cfg.angular_ext)
        rows = sample_grid(st, extent, points)
        if fmt == "json":
            text = json.dumps([{"x1": a, "x2": b, "psi": v} for a, b, v in rows], indent=2) + "\n"
        else:
            text = _csv(["x1", "x2", "psi"], [list(r) for r in rows])
        _emit(text, output)

    _run(go)


def main():
    cli()


if __name__ == "__main__":
    main()
