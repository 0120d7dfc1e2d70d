"""Pick the coupling of the X1-Jacobi sector term by eigen-residual, per parameter pair."""

from fractions import Fraction

import click

from dunklext.angular_ext import CANDIDATE_COUPLINGS, resolve_coupling
from dunklext.params import Parameters


@click.command()
@click.option("--mu", "mus", multiple=True, default=("0.8,1.3", "1.2,0.7", "2.5,0.9"), show_default=True)
def main(mus):
    for text in mus:
        a, b = (Fraction(x) for x in text.split(","))
        res = resolve_coupling(Parameters(a, b))
        cells = "  ".join(f"c={c:g}: {res.residuals[c]:.2e}" for c in CANDIDATE_COUPLINGS)
        click.echo(f"mu=({a},{b})  {cells}  -> {res.coupling:g} (gap {res.gap_orders:.1f} decades, {res.states} states)")


if __name__ == "__main__":
    main()
