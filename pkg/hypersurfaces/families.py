"""
Polarized defining functions of the hypersurface families.

Each builder receives the coordinate jets (z, w, zeta, omega) at the
polarized base point and returns the jet of the raw defining function rho.
Evaluation always sets zeta = conj(z), omega = conj(w).
"""

import logging

from common.choices import FamilyKind
from common.exceptions import JetDomainError, SurfaceDomainError
from jets.operations import coordinate_jets, jet_log, jet_sqrt

logger = logging.getLogger(__name__)


def _flat_tube(params, z, w, zeta, omega):
    return ((z - zeta) ** 2 + (w - omega) ** 2).scale(-0.25)


def _log_tube(params, z, w, zeta, omega):
    if z.value == 0 or w.value == 0:
        raise SurfaceDomainError(
            f"log-tube is defined off the coordinate axes, got z={z.value}, w={w.value}"
        )
    log_z = jet_log(z * zeta).scale(0.5)
    log_w = jet_log(w * omega).scale(0.5)
    return log_z**2 + log_w**2


def _sphere(params, z, w, zeta, omega):
    (r,) = params
    return z * zeta + w * omega - r**2


def _ellipsoid(params, z, w, zeta, omega):
    a, b, c, d = params
    x = (z + zeta).scale(0.5)
    x_prime = (z - zeta).scale(1 / 2j)
    y = (w + omega).scale(0.5)
    y_prime = (w - omega).scale(1 / 2j)
    return (x**2).scale(a) + (x_prime**2).scale(b) + (y**2).scale(c) + (y_prime**2).scale(d) - 1


def _cartan_mu(params, z, w, zeta, omega):
    (alpha,) = params
    q = 1 + z**2 + w**2
    q_tilde = 1 + zeta**2 + omega**2
    modulus_squared = q * q_tilde
    if abs(modulus_squared.value) == 0:
        raise SurfaceDomainError(
            f"cartan-mu chart needs 1 + z**2 + w**2 != 0, got z={z.value}, w={w.value}"
        )
    return jet_sqrt(modulus_squared).scale(alpha) - (1 + z * zeta + w * omega)


FAMILY_BUILDERS = {
    FamilyKind.FLAT_TUBE: _flat_tube,
    FamilyKind.LOG_TUBE: _log_tube,
    FamilyKind.SPHERE: _sphere,
    FamilyKind.ELLIPSOID: _ellipsoid,
    FamilyKind.CARTAN_MU: _cartan_mu,
}


def rho_jet(family, point, degree):
    """
    Jet of the raw polarized defining function of `family` at `point`.

    `point` is a (z, w) pair or a SurfacePoint. The surface itself is
    {rho = family.default_level}; see `level_jet` for the shifted form.
    """
    z, w = point.coords if hasattr(point, "coords") else point
    coordinates = coordinate_jets(z, w, degree)
    try:
        return FAMILY_BUILDERS[family.kind](family.params, *coordinates)
    except JetDomainError as exc:
        raise SurfaceDomainError(f"{family} is not real-analytic at ({z}, {w}): {exc}") from exc


def level_jet(family, point, degree, level=None):
    """rho - level, whose zero set is the surface."""
    level = family.default_level if level is None else level
    return rho_jet(family, point, degree) - level


def rho_value(family, point):
    """Real value of rho at a point of C**2."""
    return rho_jet(family, point, 1).value.real
