import click

from scanner.services import scan_surface, summarize

from ..models import CliConfig
from ..serializers.scan import scan_output
from ..utils import common_options, emit, family_from_options, family_options, handle_errors, output_options


@click.command()
@family_options()
@click.option("--count", type=int, default=1000, show_default=True, help="Number of sample points.")
@common_options
@output_options
@click.pass_context
@handle_errors
def scan(ctx, kind, eps, radius, params, alpha, count, seed, degree, threads, out, output_format):
    """Sample a surface and evaluate det A3 at every point."""
    config = CliConfig(
        command="scan",
        family=family_from_options(kind, eps, radius, params, alpha),
        count=count,
        seed=seed,
        degree=degree,
        threads=threads,
        out=out,
        format=output_format,
    )
    records = scan_surface(
        config.family,
        count=config.count,
        seed=config.seed,
        degree=config.degree,
        threads=config.threads,
    )
    emit(scan_output(records, config.format.value), config.out)

    summary = summarize(records)
    flags = ", ".join(f"{flag}={n}" for flag, n in sorted(summary.flag_counts.items()))
    click.echo(
        f"{summary.count} points, normalized residual in "
        f"[{summary.min_residual:.3e}, {summary.max_residual:.3e}], {flags}",
        err=True,
    )
    if summary.poisoned:
        ctx.exit(1)
