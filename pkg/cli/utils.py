import functools
import math

import click
from pydantic import ValidationError

from common.choices import FamilyKind, OutputFormat
from common.exceptions import ComputationError, CRToolError
from crtool import settings
from hypersurfaces.models import parse_family


def parse_reals(value, count=None):
    """'1,2.5,-3' -> (1.0, 2.5, -3.0); raises click.BadParameter on malformed input."""
    if value is None:
        return None
    parts = [part.strip() for part in value.split(",")]
    if not value.strip() or any(not part for part in parts):
        raise click.BadParameter(f"expected comma-separated real numbers, got {value!r}")
    try:
        reals = tuple(float(part) for part in parts)
    except ValueError:
        raise click.BadParameter(f"expected comma-separated real numbers, got {value!r}")
    if not all(math.isfinite(v) for v in reals):
        raise click.BadParameter(f"numbers must be finite, got {value!r}")
    if count is not None and len(reals) != count:
        raise click.BadParameter(f"expected {count} comma-separated numbers, got {len(reals)}")
    return reals


def _reals_callback(count=None):
    def callback(ctx, param, value):
        return parse_reals(value, count)

    return callback


def point_from_reals(reals):
    """(re z, im z, re w, im w) -> (z, w)."""
    re_z, im_z, re_w, im_w = reals
    return complex(re_z, im_z), complex(re_w, im_w)


def handle_errors(func):
    """
    Map toolkit errors onto exit codes.

    Numerical failures (ComputationError) are reported on stderr with exit
    code 1; validation, domain and precondition errors become usage errors
    (exit code 2).
    """

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except ValidationError as exc:
            messages = "; ".join(error["msg"] for error in exc.errors())
            raise click.UsageError(messages) from exc
        except ComputationError as exc:
            click.echo(f"Error: {exc}", err=True)
            click.get_current_context().exit(1)
        except (CRToolError, ValueError) as exc:
            raise click.UsageError(str(exc)) from exc

    return wrapper


def _apply(options):
    def decorator(func):
        for option in reversed(options):
            func = option(func)
        return func

    return decorator


def family_options(default=None):
    return _apply(
        [
            click.option(
                "--family",
                "kind",
                type=click.Choice(FamilyKind.values()),
                required=default is None,
                default=default,
                help="Hypersurface family.",
            ),
            click.option("--eps", type=float, help="Tube radius (flat-tube, log-tube)."),
            click.option("--r", "radius", type=float, help="Sphere radius (default 1)."),
            click.option(
                "--params",
                callback=_reals_callback(4),
                help="Ellipsoid coefficients a,b,c,d.",
            ),
            click.option("--alpha", type=float, help="cartan-mu parameter, alpha > 1."),
        ]
    )


def family_from_options(kind, eps=None, radius=None, params=None, alpha=None):
    return parse_family(kind, eps=eps, r=radius, params=params, alpha=alpha)


common_options = _apply(
    [
        click.option("--seed", type=int, default=settings.DEFAULT_SEED, show_default=True),
        click.option(
            "--degree",
            type=click.IntRange(min=6),
            default=settings.DEFAULT_DEGREE,
            show_default=True,
            help="Jet degree.",
        ),
        click.option(
            "--threads",
            type=click.IntRange(min=1),
            envvar="CRTOOL_THREADS",
            default=settings.THREADS,
            help="Worker processes (default: CRTOOL_THREADS or all cores).",
        ),
    ]
)

output_options = _apply(
    [
        click.option(
            "--out",
            type=click.Path(dir_okay=False, writable=True),
            help="Output file (default: stdout).",
        ),
        click.option(
            "--format",
            "output_format",
            type=click.Choice(OutputFormat.values()),
            default=OutputFormat.CSV.value,
            show_default=True,
        ),
    ]
)

point_option = click.option(
    "--point",
    callback=_reals_callback(4),
    required=True,
    help="Point as re z,im z,re w,im w.",
)

eps_list_option = click.option(
    "--eps-list",
    callback=_reals_callback(),
    required=True,
    help="Comma-separated radii.",
)


def format_real(value):
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return ""
    return format(value, ".17g")


def format_complex(value):
    return f"{format_real(value.real)} {format_real(value.imag)}"


def emit(text, out=None):
    """Write machine-readable output to `out` or stdout, always with '\\n' line endings."""
    if out is None:
        click.echo(text, nl=False)
        return
    with open(out, "w", encoding="utf-8", newline="") as handle:
        handle.write(text)
