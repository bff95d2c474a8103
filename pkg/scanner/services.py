import logging
import math
from collections import Counter
from functools import partial

import numpy as np
from scipy.optimize import minimize

from common.choices import FamilyKind, UmbilicFlag
from common.exceptions import CRToolError, PreconditionError, SamplingError
from crtool import settings
from hypersurfaces.models import FamilyDescriptor, describe
from hypersurfaces.sampling import chart_point, sample_coords, sample_points
from invariants.operations import (
    a3_matrix,
    classify,
    cr_frame,
    det_a3,
    normalized_residual,
)

from .models import ScalingFit, ScanRecord, ScanSummary, Thresholds, UmbilicCandidate
from .tasks import run_tasks

logger = logging.getLogger(__name__)


def evaluate_point(family, point, degree=None, thresholds=None):
    """One scan row; toolkit errors at the point give a poisoned row instead of raising."""
    thresholds = thresholds or Thresholds()
    common = dict(
        family=describe(family),
        kind=family.kind.value,
        eps=family.eps,
        params=family.params,
        coords=point.param,
        z=point.z,
        w=point.w,
        rho_resid=point.residual,
    )
    try:
        matrix = a3_matrix(family, point, degree)
        levi = cr_frame(family, point, degree=2).levi
    except CRToolError as exc:
        logger.debug("poisoned point %s on %s: %s", point.coords, family, exc)
        return ScanRecord(**common, flag=UmbilicFlag.POISONED, error=str(exc))

    residual = normalized_residual(matrix)
    return ScanRecord(
        **common,
        levi=levi,
        det_a3=det_a3(matrix),
        normalized_residual=residual,
        flag=classify(residual, thresholds.candidate, thresholds.indeterminate),
    )


def scan_surface(family, level=None, count=1, seed=None, thresholds=None, degree=None, threads=None):
    """Evaluate det A3 at `count` seeded sample points of {rho = level}."""
    if count < 1:
        raise PreconditionError(f"count must be at least 1, got {count}")
    thresholds = thresholds or Thresholds()
    points = sample_points(family, level, count, seed)
    logger.info("scanning %d points on %s", count, family)
    records = run_tasks(
        partial(evaluate_point, family, degree=degree, thresholds=thresholds),
        points,
        threads=threads,
        desc=f"scan {describe(family)}",
    )
    poisoned = sum(record.poisoned for record in records)
    if poisoned:
        logger.warning("%d of %d points on %s are poisoned", poisoned, count, family)
    logger.info("finished scan of %s", family)
    return records


def summarize(records):
    valid = [record for record in records if not record.poisoned]
    residuals = [record.normalized_residual for record in valid]
    return ScanSummary(
        count=len(records),
        min_residual=min(residuals, default=math.nan),
        max_residual=max(residuals, default=math.nan),
        min_levi=min((record.levi for record in valid), default=math.nan),
        flag_counts=dict(Counter(record.flag.value for record in records)),
    )


def floor_estimate(family, level=None, counts=(100, 200), seed=None, degree=None, threads=None):
    """[(count, smallest normalized residual over `count` seeded points)] for each count."""
    floors = []
    for count in counts:
        records = scan_surface(family, level, count, seed, degree=degree, threads=threads)
        floors.append((count, summarize(records).min_residual))
    return floors


def _objective(family, level, degree, coords):
    try:
        point = chart_point(family, level, coords)
        return normalized_residual(a3_matrix(family, point, degree)) ** 2
    except CRToolError:
        return 1.0


def _minimize_from(family, level, degree, tol, start):
    """Nelder-Mead from one chart start; the candidate it reaches, or None above tol."""
    index, x0 = start
    target = (settings.NELDER_MEAD_STOP_FRACTION * tol) ** 2

    def callback(intermediate_result):
        if intermediate_result.fun <= target:
            raise StopIteration

    # The squared residual has the same minimizers and is smooth at the zeros.
    result = minimize(
        partial(_objective, family, level, degree),
        x0,
        method="Nelder-Mead",
        callback=callback,
        options={"maxiter": settings.NELDER_MEAD_MAX_ITER, "xatol": 1e-8, "fatol": target},
    )
    try:
        point = chart_point(family, level, result.x)
        residual = normalized_residual(a3_matrix(family, point, degree))
    except CRToolError as exc:
        logger.debug("start %d ended outside the chart: %s", index, exc)
        return None
    logger.debug("start %d: residual %.3e after %d iterations", index, residual, result.nit)
    if residual > tol:
        return None
    return UmbilicCandidate(point=point, residual=residual, start=index)


def deduplicate(candidates, distance=None):
    """Keep the best candidate of every cluster closer than `distance` in (Re z, Im z, Re w, Im w)."""
    distance = settings.UMBILIC_DEDUP_DISTANCE if distance is None else distance
    kept = []
    for candidate in sorted(candidates, key=lambda c: (c.residual, c.start)):
        position = np.array(candidate.point.real_coords)
        if all(np.linalg.norm(position - np.array(k.point.real_coords)) > distance for k in kept):
            kept.append(candidate)
    return kept


def find_umbilics(family, starts=200, seed=None, tol=None, level=None, degree=None, threads=None):
    """
    Multistart Nelder-Mead search for zeros of the normalized residual.

    Starts are chart coordinates drawn from the seeded generator; the search
    runs in the three-dimensional chart of `chart_point`. Minima with
    residual <= tol are returned best first, deduplicated.
    """
    if starts < 1:
        raise PreconditionError(f"starts must be at least 1, got {starts}")
    tol = settings.CANDIDATE_THRESHOLD if tol is None else tol
    level = family.default_level if level is None else level
    seed = settings.DEFAULT_SEED if seed is None else seed
    if family.kind == FamilyKind.ELLIPSOID and len(set(family.params)) == 1:
        logger.warning("%s is a round sphere; every point is umbilical", family)

    coords = sample_coords(family, starts, np.random.default_rng(seed))
    logger.info("searching %s for umbilical points from %d starts", family, starts)
    found = run_tasks(
        partial(_minimize_from, family, level, degree, tol),
        list(enumerate(coords)),
        threads=threads,
        desc=f"search {describe(family)}",
    )
    candidates = deduplicate([c for c in found if c is not None])
    logger.info("found %d candidates on %s", len(candidates), family)
    return candidates


def _spread(values):
    values = np.asarray(values)
    if not np.all(np.isfinite(values)):
        return math.inf
    return float((values.max() - values.min()) / values.mean())


def fit_scaling(family, eps_list, points_per_eps=100, seed=None, degree=None, threads=None):
    """
    Least-squares fit of log mean |det A3| against log eps.

    `family` supplies the kind; each eps gets its own sample. The fit is
    flagged invalid when |det A3| varies over a sample by more than the
    spread tolerance.
    """
    eps_list = [float(eps) for eps in eps_list]
    if len(set(eps_list)) != len(eps_list):
        raise PreconditionError(f"eps values must be distinct, got {eps_list}")
    if len(eps_list) < 3:
        raise PreconditionError(f"a scaling fit needs at least 3 eps values, got {eps_list}")
    eps_list = sorted(eps_list)

    means, spreads = [], []
    for eps in eps_list:
        surface = FamilyDescriptor(kind=family.kind, params=(eps,))
        records = scan_surface(surface, count=points_per_eps, seed=seed, degree=degree, threads=threads)
        poisoned = [record for record in records if record.poisoned]
        if poisoned:
            raise SamplingError(f"cannot fit scaling, {surface} has poisoned points: {poisoned[0].error}")
        moduli = [abs(record.det_a3) for record in records]
        means.append(float(np.mean(moduli)))
        spreads.append(_spread(moduli))

    log_eps = np.log(eps_list)
    log_det = np.log(means)
    slope, intercept = np.polyfit(log_eps, log_det, 1)
    max_residual = float(np.abs(log_det - (slope * log_eps + intercept)).max())
    valid = all(spread <= settings.SCALING_SPREAD_TOLERANCE for spread in spreads)
    if not valid:
        logger.warning("per-eps spread %s exceeds %g", spreads, settings.SCALING_SPREAD_TOLERANCE)
    logger.info("scaling fit on %s: slope %.10f", family.kind.value, slope)
    return ScalingFit(
        eps_list=tuple(eps_list),
        log_det=tuple(float(v) for v in log_det),
        slope=float(slope),
        intercept=float(intercept),
        max_residual=max_residual,
        spreads=tuple(spreads),
        valid=valid,
    )
