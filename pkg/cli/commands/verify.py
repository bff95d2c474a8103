import click

from common.choices import VerifySuite
from crtool import settings

from ..suites import run_suites
from ..utils import handle_errors


@click.command()
@click.option(
    "--suite",
    type=click.Choice(VerifySuite.values()),
    default=VerifySuite.ALL.value,
    show_default=True,
)
@click.option("--tol", type=click.FloatRange(min=0, min_open=True), help="Slope tolerance of the scaling suite.")
@click.option("--seed", type=int, default=settings.DEFAULT_SEED, show_default=True)
@click.option("--threads", type=click.IntRange(min=1), envvar="CRTOOL_THREADS", default=settings.THREADS)
@click.pass_context
@handle_errors
def verify(ctx, suite, tol, seed, threads):
    """Run the acceptance claims and report PASS/FAIL for each."""
    if VerifySuite(suite) == VerifySuite.CARTAN_MU and not settings.ENABLE_CARTAN_MU:
        raise click.UsageError("the cartan-mu family is disabled (CRTOOL_ENABLE_CARTAN_MU)")
    claims = run_suites(suite, seed, threads, tol)
    for claim in claims:
        click.echo(str(claim))
    failed = sum(not claim.passed for claim in claims)
    click.echo(f"{len(claims) - failed}/{len(claims)} claims passed")
    if failed:
        ctx.exit(1)
