import click

from common.choices import FamilyKind
from hypersurfaces.models import FamilyDescriptor
from scanner.services import fit_scaling

from ..models import CliConfig
from ..utils import common_options, eps_list_option, format_real, handle_errors

TUBE_FAMILIES = [FamilyKind.FLAT_TUBE.value, FamilyKind.LOG_TUBE.value]


@click.command()
@click.option(
    "--family",
    "kind",
    type=click.Choice(TUBE_FAMILIES),
    default=FamilyKind.FLAT_TUBE.value,
    show_default=True,
)
@eps_list_option
@click.option("--count", type=int, default=100, show_default=True, help="Sample points per eps.")
@common_options
@click.pass_context
@handle_errors
def scaling(ctx, kind, eps_list, count, seed, degree, threads):
    """Fit log |det A3| against log eps."""
    config = CliConfig(
        command="scaling",
        family=FamilyDescriptor(kind=kind, params=(eps_list[0],)),
        count=count,
        seed=seed,
        degree=degree,
        threads=threads,
    )
    fit = fit_scaling(
        config.family,
        eps_list,
        points_per_eps=config.count,
        seed=config.seed,
        degree=config.degree,
        threads=config.threads,
    )
    click.echo("eps,log_det,spread")
    for eps, log_det, spread in zip(fit.eps_list, fit.log_det, fit.spreads):
        click.echo(f"{format_real(eps)},{format_real(log_det)},{format_real(spread)}")
    click.echo(f"slope: {format_real(fit.slope)}")
    click.echo(f"intercept: {format_real(fit.intercept)}")
    click.echo(f"constant: {format_real(fit.constant)}")
    click.echo(f"max_residual: {format_real(fit.max_residual)}")
    click.echo(f"valid: {str(fit.valid).lower()}")
    if not fit.valid:
        ctx.exit(1)
