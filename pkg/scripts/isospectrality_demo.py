"""Compare base and radially extended spectra channel by channel, with a grid check."""

from fractions import Fraction

import click

from dunklext.params import ExtensionSpec, Parameters
from dunklext.radial_ext import admissible_k, extended_potential, g_factor
from dunklext.verify.oracles import grid_spectrum_oracle


@click.command()
@click.option("--mu1", default="0.3", show_default=True)
@click.option("--mu2", default="0.7", show_default=True)
@click.option("--n", "n", default="1/2", show_default=True)
@click.option("--levels", default=5, show_default=True)
def main(mu1, mu2, n, levels):
    p, n = Parameters(Fraction(mu1), Fraction(mu2)), Fraction(n)
    a = 2 * n + p.total
    base = [float(2 * k + a + 1) for k in range(levels)]
    click.echo(f"alpha = {a}  base: {', '.join(f'{e:.4f}' for e in base)}")
    for text in ("I:1", "I:2", "II:1", "II:2", "III:2"):
        spec = ExtensionSpec.parse(text)
        ks = [k for k in range(spec.m + levels + 1) if admissible_k(spec, k)][:levels]
        exact = [float(2 * k - 2 * spec.m + a + 1) for k in ks]
        g = g_factor(spec, a)
        grid = grid_spectrum_oracle(lambda r: extended_potential(g, r), p, n, count=levels)
        dev = max(abs(x - y) for x, y in zip(grid, exact))
        click.echo(f"{text:6s} exact: {', '.join(f'{e:.4f}' for e in exact)}  grid dev {dev:.1e}")


if __name__ == "__main__":
    main()
