import logging

import click

from common.choices import FamilyKind
from crtool import settings
from hypersurfaces.models import describe
from invariants.operations import a3_matrix, classify, cr_frame, det_a3, normalized_residual

from ..models import CliConfig
from ..utils import (
    family_from_options,
    family_options,
    format_complex,
    format_real,
    handle_errors,
    point_from_reals,
    point_option,
)

logger = logging.getLogger(__name__)

# Relative distance from the level above which a checked point is reported as off the surface.
OFF_SURFACE_TOLERANCE = 1e-8


@click.command()
@family_options()
@point_option
@click.option(
    "--degree", type=click.IntRange(min=6), default=settings.DEFAULT_DEGREE, show_default=True
)
@handle_errors
def check(kind, eps, radius, params, alpha, point, degree):
    """Evaluate the umbilic obstruction at one point."""
    family = family_from_options(kind, eps, radius, params, alpha)
    config = CliConfig(command="check", family=family, degree=degree)
    z, w = point_from_reals(point)

    frame = cr_frame(config.family, (z, w), config.degree)
    matrix = a3_matrix(config.family, (z, w), config.degree)
    level = family.default_level
    if abs(frame.rho - level) > OFF_SURFACE_TOLERANCE * max(1.0, abs(level)):
        logger.warning("point (%s, %s) is off %s: rho - level = %.3e", z, w, family, frame.rho - level)

    residual = normalized_residual(matrix)
    lines = [
        ("family", describe(family)),
        ("point", f"{format_complex(z)} {format_complex(w)}"),
        ("rho", format_real(frame.rho)),
        ("level", format_real(level)),
        ("levi", format_real(frame.levi)),
        ("hess_LL", format_complex(frame.hess_LL)),
        ("det_a3", format_complex(det_a3(matrix))),
    ]
    if family.kind == FamilyKind.FLAT_TUBE:
        lines.append(("det_b", format_complex(det_a3(matrix.entries[:4, 1:]))))
    lines += [
        ("normalized_residual", format_real(residual)),
        ("flag", classify(residual).value),
    ]
    for key, value in lines:
        click.echo(f"{key}: {value}")
