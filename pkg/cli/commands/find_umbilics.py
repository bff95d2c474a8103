import click

from crtool import settings
from scanner.services import find_umbilics as search_umbilics

from ..models import CliConfig
from ..serializers.umbilics import umbilic_output
from ..utils import common_options, emit, family_from_options, family_options, handle_errors, output_options


@click.command(name="find-umbilics")
@family_options()
@click.option("--starts", type=click.IntRange(min=1), default=200, show_default=True)
@click.option(
    "--tol",
    type=float,
    default=settings.CANDIDATE_THRESHOLD,
    show_default=True,
    help="Largest normalized residual accepted as a candidate.",
)
@common_options
@output_options
@handle_errors
def find_umbilics(kind, eps, radius, params, alpha, starts, tol, seed, degree, threads, out, output_format):
    """Multistart Nelder-Mead search for umbilical points."""
    config = CliConfig(
        command="find-umbilics",
        family=family_from_options(kind, eps, radius, params, alpha),
        count=starts,
        tol=tol,
        seed=seed,
        degree=degree,
        threads=threads,
        out=out,
        format=output_format,
    )
    candidates = search_umbilics(
        config.family,
        starts=config.count,
        seed=config.seed,
        tol=config.tol,
        degree=config.degree,
        threads=config.threads,
    )
    emit(umbilic_output(config.family, candidates, config.format.value), config.out)
    click.echo(f"{len(candidates)} candidates from {starts} starts", err=True)
