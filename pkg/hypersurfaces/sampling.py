import cmath
import logging
import math

import numpy as np
from scipy.optimize import brentq

from common.choices import FamilyKind
from common.exceptions import ProjectionError, SamplingError, SurfaceDomainError
from crtool import settings

from .families import rho_jet
from .models import SurfacePoint

logger = logging.getLogger(__name__)

# Ray parameter beyond which a cartan-mu direction is treated as missing the surface.
RAY_SEARCH_LIMIT = 1e3
MAX_DRAWS_PER_POINT = 100


def gradient(family, z, w):
    """rho, rho_zbar and rho_wbar at (z, w)."""
    jet = rho_jet(family, (z, w), 1)
    return jet.value.real, jet.coeff((0, 0, 1, 0)), jet.coeff((0, 0, 0, 1))


def project_to_level(family, level, start, tol=None, max_iter=None):
    """
    Newton iteration along the real gradient of rho until |rho - level| <= tol.

    The step moves (z, w) by s * (rho_zbar, rho_wbar) with
    s = (level - rho) / (2 * (|rho_z|**2 + |rho_w|**2)), which is the
    Euclidean Newton step (level - rho) / |grad rho|**2 along grad rho.
    """
    tol = settings.PROJECTION_TOLERANCE if tol is None else tol
    max_iter = settings.PROJECTION_MAX_ITER if max_iter is None else max_iter
    z, w = (complex(c) for c in (start.coords if hasattr(start, "coords") else start))
    param = getattr(start, "param", None)

    for iteration in range(max_iter + 1):
        rho, rho_zbar, rho_wbar = gradient(family, z, w)
        residual = rho - level
        if abs(residual) <= tol:
            logger.debug("projected onto %s after %d iterations", family, iteration)
            return SurfacePoint(z=z, w=w, residual=residual, param=param, iterations=iteration)
        if iteration == max_iter:
            break
        norm_squared = abs(rho_zbar) ** 2 + abs(rho_wbar) ** 2
        if norm_squared == 0:
            raise ProjectionError(f"gradient of {family} vanishes at ({z}, {w})")
        step = -residual / (2 * norm_squared)
        z += step * rho_zbar
        w += step * rho_wbar

    raise ProjectionError(
        f"projection onto {family} at level {level} did not converge in {max_iter} "
        f"iterations (residual {residual:.3e})"
    )


def _hopf(a, b, c):
    return math.cos(a) * cmath.exp(1j * b), math.sin(a) * cmath.exp(1j * c)


def _cartan_mu_ray(family, level, direction):
    """Smallest positive t with rho(t * direction) = level, by bracketing."""
    dz, dw = direction

    def along(t):
        return rho_jet(family, (t * dz, t * dw), 1).value.real - level

    # rho(0) = alpha - 1 > level; the surface is where rho first drops to the level.
    t_low, t_high = 0.0, 0.5
    while along(t_high) > 0:
        t_low, t_high = t_high, 2 * t_high
        if t_high > RAY_SEARCH_LIMIT:
            raise SurfaceDomainError(f"direction {direction} does not meet {family}")
    t = brentq(along, t_low, t_high, xtol=1e-15, rtol=4 * np.finfo(float).eps)
    return t * dz, t * dw


def cartan_mu_recenter(z, w):
    """
    The same point of the projective surface in the affine chart of its
    largest homogeneous coordinate, so that |z|, |w| <= 1.

    (1 : z : w) is permuted to put that coordinate first. Permutations
    preserve both z0**2 + z1**2 + z2**2 and |z0|**2 + |z1|**2 + |z2|**2,
    so the zero level of rho is carried onto itself.
    """
    if max(abs(z), abs(w)) <= 1:
        return z, w
    if abs(z) >= abs(w):
        return 1 / z, w / z
    return z / w, 1 / w


def chart_point(family, level, coords):
    """
    Point of {rho = level} from three chart coordinates.

    flat-tube:  (theta, Re z, Re w), (Im z, Im w) = sqrt(level) (cos, sin) theta
    log-tube:   (theta, arg z, arg w), (log|z|, log|w|) = sqrt(level) (cos, sin) theta
    sphere, ellipsoid, cartan-mu: Hopf angles (a, b, c) of a point of S^3,
    scaled onto the surface (ellipsoid, sphere) or followed along its ray
    (cartan-mu, then moved into its best affine chart on the zero level).
    """
    first, second, third = (float(c) for c in coords)
    kind = family.kind
    if kind == FamilyKind.FLAT_TUBE:
        radius = math.sqrt(level)
        z = complex(second, radius * math.cos(first))
        w = complex(third, radius * math.sin(first))
    elif kind == FamilyKind.LOG_TUBE:
        radius = math.sqrt(level)
        z = cmath.exp(complex(radius * math.cos(first), second))
        w = cmath.exp(complex(radius * math.sin(first), third))
    elif kind == FamilyKind.SPHERE:
        (r,) = family.params
        scale = math.sqrt(r**2 + level)
        z, w = (scale * c for c in _hopf(first, second, third))
    elif kind == FamilyKind.ELLIPSOID:
        a, b, c, d = family.params
        scale = math.sqrt(1 + level)
        x = scale * math.cos(first) * math.cos(second) / math.sqrt(a)
        x_prime = scale * math.cos(first) * math.sin(second) / math.sqrt(b)
        y = scale * math.sin(first) * math.cos(third) / math.sqrt(c)
        y_prime = scale * math.sin(first) * math.sin(third) / math.sqrt(d)
        z, w = complex(x, x_prime), complex(y, y_prime)
    else:
        z, w = _cartan_mu_ray(family, level, _hopf(first, second, third))
        if level == 0:
            z, w = cartan_mu_recenter(z, w)

    rho = rho_jet(family, (z, w), 1).value.real
    point = SurfacePoint(z=z, w=w, residual=rho - level, param=(first, second, third))
    if abs(point.residual) > settings.SAMPLE_RESIDUAL_TOLERANCE:
        point = project_to_level(family, level, point)
    return point


def sample_coords(family, count, rng):
    """
    Draw `count` chart coordinate triples for `family` from `rng`.

    One row of three uniforms is consumed per point, so the first n points of
    a larger draw coincide with a draw of n points from the same seed.
    """
    uniforms = rng.random((count, 3))
    coords = 2 * math.pi * uniforms
    if family.kind == FamilyKind.FLAT_TUBE:
        coords[:, 1:] -= math.pi
    elif family.kind != FamilyKind.LOG_TUBE:
        # Uniform on S^3: cos(a)**2 is uniform on [0, 1].
        coords[:, 0] = np.arccos(np.sqrt(uniforms[:, 0]))
    return coords


def sample_points(family, level=None, count=1, seed=None):
    """
    Deterministic pseudo-random points on {rho = level}.

    All randomness comes from numpy's PCG64 generator seeded with `seed`.
    cartan-mu directions that miss the chart are redrawn from the same stream.
    """
    if count < 1:
        raise ValueError(f"count must be at least 1, got {count}")
    level = family.default_level if level is None else level
    seed = settings.DEFAULT_SEED if seed is None else seed
    rng = np.random.default_rng(seed)

    points = []
    draws = 0
    while len(points) < count:
        if draws > MAX_DRAWS_PER_POINT * count:
            raise SamplingError(f"could not place {count} points on {family} at level {level}")
        for coords in sample_coords(family, count - len(points), rng):
            draws += 1
            try:
                points.append(chart_point(family, level, coords))
            except SurfaceDomainError as exc:
                logger.debug("redrawing sample: %s", exc)
    logger.info("sampled %d points on %s at level %g", count, family, level)
    return points
