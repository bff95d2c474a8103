"""
The acceptance battery run by `verify`.

Each suite takes (seed, threads, tol) and returns ClaimResult values;
`tol` only overrides the slope tolerance of the scaling suite.
"""

import logging
import math

import numpy as np

from common.choices import FamilyKind, UmbilicFlag, VerifySuite
from crtool import settings
from hypersurfaces.families import rho_jet
from hypersurfaces.models import FamilyDescriptor
from hypersurfaces.sampling import sample_points
from invariants.operations import (
    a3_matrix,
    complex_hessian,
    det_a3,
    lbar_apply,
    monge_ampere_sqrt,
    normalized_residual,
    reduction_check,
)
from invariants.oracles import entrywise_disagreement, finite_difference_a3
from jets.utils import OMEGA, ZETA
from scanner.services import find_umbilics, fit_scaling, scan_surface, summarize

from .models import ClaimResult

logger = logging.getLogger(__name__)

SCALING_EPS = (0.25, 0.5, 1.0, 2.0, 4.0)
SLOPE_TOLERANCE = 1e-6
SPREAD_TOLERANCE = 1e-9
ELLIPSOID_PARAMS = ((1.0, 2.0, 1.0, 3.0), (1.0, 1.5, 2.0, 1.0))
CARTAN_MU_ALPHA = 2.0


def _flat(eps):
    return FamilyDescriptor(kind=FamilyKind.FLAT_TUBE, params=(eps,))


def _log(eps):
    return FamilyDescriptor(kind=FamilyKind.LOG_TUBE, params=(eps,))


def _relative(a, b):
    return abs(a - b) / max(abs(a), abs(b), np.finfo(float).tiny)


def _claim(suite, name, passed, measured):
    return ClaimResult(suite=suite.value, name=name, passed=bool(passed), measured=measured)


def flat_tube_claims(seed, threads, tol=None):
    suite = VerifySuite.FLAT_TUBE
    claims = []
    for eps in (0.5, 1.0, 2.0):
        summary = summarize(scan_surface(_flat(eps), count=1000, seed=seed, threads=threads))
        claims.append(
            _claim(
                suite,
                f"normalized residual > 1e-6 at eps={eps:g}",
                summary.min_residual > 1e-6 and not summary.poisoned,
                f"min {summary.min_residual:.3e}",
            )
        )
        claims.append(
            _claim(suite, f"Levi form > 0 at eps={eps:g}", summary.min_levi > 0, f"min {summary.min_levi:.3e}")
        )
    return claims


def scaling_claims(seed, threads, tol=None):
    suite = VerifySuite.SCALING
    tol = SLOPE_TOLERANCE if tol is None else tol
    fit = fit_scaling(_flat(1.0), SCALING_EPS, points_per_eps=100, seed=seed, threads=threads)
    spread = max(fit.spreads)
    return [
        _claim(
            suite,
            f"slope of log|det A3| = 14 within {tol:g}",
            abs(fit.slope - 14) <= tol,
            f"slope {fit.slope:.12f}, constant {fit.constant:.6e}",
        ),
        _claim(suite, f"per-eps spread <= {SPREAD_TOLERANCE:g}", spread <= SPREAD_TOLERANCE, f"max {spread:.3e}"),
    ]


def reduction_claims(seed, threads, tol=None):
    suite = VerifySuite.REDUCTION
    worst_reduction, worst_last_row = 0.0, 0.0
    for eps in (0.5, 1.0, 2.0):
        family = _flat(eps)
        for point in sample_points(family, count=100, seed=seed):
            matrix = a3_matrix(family, point)
            worst_last_row = max(worst_last_row, float(np.abs(matrix.entries[4, 1:]).max()))
            worst_reduction = max(worst_reduction, reduction_check(family, point))
    return [
        _claim(
            suite,
            "det A3 = eps**2 det B / 2 within 1e-10",
            worst_reduction <= 1e-10,
            f"max {worst_reduction:.3e}",
        ),
        _claim(
            suite,
            "L-bar**k of the last generator vanishes (k >= 1)",
            worst_last_row <= 1e-12,
            f"max {worst_last_row:.3e}",
        ),
    ]


def log_tube_claims(seed, threads, tol=None):
    suite = VerifySuite.LOG_TUBE
    claims = []
    for eps in (0.1, 0.5, 1.0):
        summary = summarize(scan_surface(_log(eps), count=1000, seed=seed, threads=threads))
        nonumbilic = summary.flag_counts.get(UmbilicFlag.NONUMBILIC.value, 0)
        claims += [
            _claim(
                suite,
                f"normalized residual > 1e-7 at eps={eps:g}",
                summary.min_residual > 1e-7,
                f"min {summary.min_residual:.3e}",
            ),
            _claim(suite, f"Levi form > 0 at eps={eps:g}", summary.min_levi > 0, f"min {summary.min_levi:.3e}"),
            _claim(
                suite,
                f"every point nonumbilic at eps={eps:g}",
                nonumbilic == summary.count,
                f"{nonumbilic}/{summary.count}",
            ),
        ]
    return claims


def sphere_claims(seed, threads, tol=None):
    suite = VerifySuite.SPHERE
    family = FamilyDescriptor(kind=FamilyKind.SPHERE, params=(1.0,))
    summary = summarize(scan_surface(family, count=1000, seed=seed, threads=threads))
    candidates = summary.flag_counts.get(UmbilicFlag.CANDIDATE.value, 0)
    return [
        _claim(
            suite,
            "normalized residual < 1e-9",
            summary.max_residual < 1e-9,
            f"max {summary.max_residual:.3e}",
        ),
        _claim(suite, "every point a candidate", candidates == summary.count, f"{candidates}/{summary.count}"),
    ]


def ellipsoid_claims(seed, threads, tol=None):
    suite = VerifySuite.ELLIPSOID
    claims = []
    for params in ELLIPSOID_PARAMS:
        family = FamilyDescriptor(kind=FamilyKind.ELLIPSOID, params=params)
        candidates = find_umbilics(family, starts=200, seed=seed, tol=settings.CANDIDATE_THRESHOLD, threads=threads)
        best = candidates[0].residual if candidates else math.nan
        claims.append(
            _claim(
                suite,
                f"umbilical candidate on {family}",
                len(candidates) >= 1,
                f"{len(candidates)} candidates, best {best:.3e}",
            )
        )
    return claims


def _families():
    families = [
        _flat(1.0),
        _log(0.5),
        FamilyDescriptor(kind=FamilyKind.SPHERE, params=(1.0,)),
        FamilyDescriptor(kind=FamilyKind.ELLIPSOID, params=ELLIPSOID_PARAMS[0]),
    ]
    if settings.ENABLE_CARTAN_MU:
        families.append(FamilyDescriptor(kind=FamilyKind.CARTAN_MU, params=(CARTAN_MU_ALPHA,)))
    return families


def invariants_claims(seed, threads, tol=None):
    suite = VerifySuite.INVARIANTS
    claims = []
    for family in _families():
        worst_tangency, worst_imag = 0.0, 0.0
        for point in sample_points(family, count=100, seed=seed):
            rho = rho_jet(family, point, settings.DEFAULT_DEGREE)
            # L-bar rho is a difference of two equal products; scale by their size.
            scale = max(
                1.0,
                float(np.abs(rho.pderiv(ZETA).coeffs).max() * np.abs(rho.pderiv(OMEGA).coeffs).max()),
            )
            worst_tangency = max(worst_tangency, float(np.abs(lbar_apply(rho, rho).coeffs).max()) / scale)
            worst_imag = max(worst_imag, abs(rho.value.imag) / max(1.0, abs(rho.value)))
        claims += [
            _claim(suite, f"L-bar rho = 0 on {family}", worst_tangency <= 1e-13, f"max {worst_tangency:.3e}"),
            _claim(suite, f"rho is real on {family}", worst_imag <= 1e-13, f"max {worst_imag:.3e}"),
        ]

    family = _flat(1.0)
    expected = np.array([[0.5, 0.0], [0.0, 0.5]])
    exact = all(
        np.array_equal(complex_hessian(rho_jet(family, point, 2)), expected)
        for point in sample_points(family, count=100, seed=seed)
    )
    claims.append(_claim(suite, "complex Hessian of the flat tube is I/2", exact, "exact" if exact else "differs"))
    return claims


def monge_ampere_claims(seed, threads, tol=None):
    suite = VerifySuite.MONGE_AMPERE
    family = _flat(1.0)
    worst = max(monge_ampere_sqrt(family, point) for point in sample_points(family, count=100, seed=seed))
    sphere = FamilyDescriptor(kind=FamilyKind.SPHERE, params=(1.0,))
    control = monge_ampere_sqrt(sphere, (1.5, 0.0))
    return [
        _claim(suite, "det ddbar sqrt(rho) = 0 on the flat tube", worst <= 1e-10, f"max {worst:.3e}"),
        _claim(suite, "det ddbar sqrt(rho) != 0 off the sphere", control > 1e-6, f"{control:.6e}"),
    ]


def consistency_claims(seed, threads, tol=None):
    suite = VerifySuite.CONSISTENCY
    family = _flat(1.0)
    worst_degree, worst_oracle = 0.0, 0.0
    for point in sample_points(family, count=10, seed=seed):
        matrix = a3_matrix(family, point, 6)
        worst_degree = max(worst_degree, _relative(det_a3(matrix), det_a3(a3_matrix(family, point, 7))))
        worst_oracle = max(
            worst_oracle, entrywise_disagreement(matrix.entries, finite_difference_a3(point.coords))
        )
    return [
        _claim(suite, "det A3 at degree 6 and 7 agree to 1e-12", worst_degree <= 1e-12, f"max {worst_degree:.3e}"),
        _claim(
            suite,
            "A3 entries match finite differences to 1e-5",
            worst_oracle <= 1e-5,
            f"max {worst_oracle:.3e}",
        ),
    ]


def _rigid_motion(rng):
    shift = rng.uniform(-math.pi, math.pi, 2)
    angle = rng.uniform(0.0, 2 * math.pi)
    cos, sin = math.cos(angle), math.sin(angle)
    if rng.random() < 0.5:
        rotation = np.array([[cos, -sin], [sin, cos]])
    else:
        rotation = np.array([[cos, sin], [sin, -cos]])

    def motion(z, w):
        moved = rotation @ np.array([z, w]) + shift
        return complex(moved[0]), complex(moved[1])

    return motion


def symmetry_claims(seed, threads, tol=None):
    suite = VerifySuite.SYMMETRY
    rng = np.random.default_rng(seed)

    family = _flat(1.0)
    worst_motion, worst_translation = 0.0, 0.0
    for point in sample_points(family, count=50, seed=seed):
        det = det_a3(a3_matrix(family, point))
        moved = _rigid_motion(rng)(*point.coords)
        worst_motion = max(worst_motion, _relative(det, det_a3(a3_matrix(family, moved))))
        shift = rng.uniform(-math.pi, math.pi, 2)
        translated = (point.z + shift[0], point.w + shift[1])
        residual = normalized_residual(a3_matrix(family, point))
        moved_residual = normalized_residual(a3_matrix(family, translated))
        worst_translation = max(worst_translation, _relative(residual, moved_residual))

    log_family = _log(0.5)
    worst_reinhardt = 0.0
    for point in sample_points(log_family, count=50, seed=seed):
        phases = np.exp(1j * rng.uniform(0.0, 2 * math.pi, 2))
        rotated = (point.z * phases[0], point.w * phases[1])
        original, moved = a3_matrix(log_family, point), a3_matrix(log_family, rotated)
        worst_reinhardt = max(
            worst_reinhardt,
            _relative(abs(det_a3(original)), abs(det_a3(moved))),
            _relative(normalized_residual(original), normalized_residual(moved)),
        )

    return [
        _claim(
            suite,
            "det A3 invariant under O(2) x R**2 on the flat tube",
            worst_motion <= 1e-11,
            f"max {worst_motion:.3e}",
        ),
        _claim(
            suite,
            "normalized residual invariant under real translations",
            worst_translation <= 1e-11,
            f"max {worst_translation:.3e}",
        ),
        _claim(
            suite,
            "|det A3| and normalized residual invariant under (e^ia z, e^ib w) on the log tube",
            worst_reinhardt <= 1e-9,
            f"max {worst_reinhardt:.3e}",
        ),
    ]


def cartan_mu_claims(seed, threads, tol=None):
    suite = VerifySuite.CARTAN_MU
    family = FamilyDescriptor(kind=FamilyKind.CARTAN_MU, params=(CARTAN_MU_ALPHA,))
    records = scan_surface(family, count=200, seed=seed, threads=threads)
    summary = summarize(records)
    levi = [record.levi for record in records if not record.poisoned]
    definite = bool(levi) and min(levi) * max(levi) > 0
    return [
        _claim(
            suite,
            f"normalized residual > {settings.CANDIDATE_THRESHOLD:g} on {family}",
            summary.min_residual > settings.CANDIDATE_THRESHOLD and not summary.poisoned,
            f"min {summary.min_residual:.3e}",
        ),
        _claim(
            suite,
            f"Levi form definite on {family}",
            definite,
            f"range [{min(levi, default=math.nan):.3e}, {max(levi, default=math.nan):.3e}]",
        ),
    ]


SUITES = {
    VerifySuite.FLAT_TUBE: flat_tube_claims,
    VerifySuite.SCALING: scaling_claims,
    VerifySuite.REDUCTION: reduction_claims,
    VerifySuite.LOG_TUBE: log_tube_claims,
    VerifySuite.SPHERE: sphere_claims,
    VerifySuite.ELLIPSOID: ellipsoid_claims,
    VerifySuite.INVARIANTS: invariants_claims,
    VerifySuite.MONGE_AMPERE: monge_ampere_claims,
    VerifySuite.CONSISTENCY: consistency_claims,
    VerifySuite.SYMMETRY: symmetry_claims,
    VerifySuite.CARTAN_MU: cartan_mu_claims,
}


def selected_suites(suite):
    suite = VerifySuite(suite)
    if suite != VerifySuite.ALL:
        return [suite]
    return [
        name for name in SUITES if name != VerifySuite.CARTAN_MU or settings.ENABLE_CARTAN_MU
    ]


def run_suites(suite, seed, threads, tol=None):
    claims = []
    for name in selected_suites(suite):
        logger.info("running %s claims", name.value)
        claims += SUITES[name](seed, threads, tol)
    return claims
