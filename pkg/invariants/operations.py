import logging
import warnings

import numpy as np
from scipy.linalg import LinAlgWarning, lu_factor

from common.choices import FamilyKind, UmbilicFlag
from common.exceptions import JetDegreeError, SurfaceDomainError
from crtool import settings
from hypersurfaces.families import rho_jet
from hypersurfaces.models import SurfacePoint
from jets.operations import jet_sqrt
from jets.utils import OMEGA, W, Z, ZETA

from .models import A3_SIZE, A3Matrix, CRFrame

logger = logging.getLogger(__name__)

# Applications of L-bar per row of A3.
LBAR_ORDER = A3_SIZE - 1


def tangent_field(rho):
    """Jets of L = (-rho_w, rho_z), the (1,0) field annihilating rho."""
    if rho.degree < 2:
        raise JetDegreeError(f"tangent field needs a rho jet of degree >= 2, got {rho.degree}")
    return rho.pderiv(W).neg(), rho.pderiv(Z)


class LbarOperator:
    """
    L-bar = -rho_omega d/dzeta + rho_zeta d/domega as a derivation on jets.

    The coefficient jets are computed once per rho; each application lowers
    the degree of its argument by one and stays exact.
    """

    def __init__(self, rho):
        if rho.degree < 1:
            raise JetDegreeError("L-bar needs a rho jet of degree >= 1")
        self.rho_degree = rho.degree
        self.zeta_coeff = rho.pderiv(OMEGA).neg()
        self.omega_coeff = rho.pderiv(ZETA)

    def __call__(self, g):
        if g.degree < 1:
            raise JetDegreeError("L-bar needs an argument of degree >= 1")
        if g.degree > self.rho_degree:
            raise JetDegreeError(
                f"L-bar of a degree {g.degree} jet needs rho of degree >= {g.degree}, "
                f"got {self.rho_degree}"
            )
        degree = g.degree - 1
        return self.zeta_coeff.truncate(degree) * g.pderiv(ZETA) + self.omega_coeff.truncate(
            degree
        ) * g.pderiv(OMEGA)


def lbar_apply(g, rho):
    return LbarOperator(rho)(g)


def complex_hessian(rho):
    """The hermitian matrix (rho_{z_i zbar_j}) at the base point."""
    if rho.degree < 2:
        raise JetDegreeError(f"complex Hessian needs degree >= 2, got {rho.degree}")
    return np.array(
        [
            [rho.derivative_value((1, 0, 1, 0)), rho.derivative_value((1, 0, 0, 1))],
            [rho.derivative_value((0, 1, 1, 0)), rho.derivative_value((0, 1, 0, 1))],
        ]
    )


def levi_form(rho, as_complex=False):
    """
    Levi form on (L, L-bar):
    rho_{z zeta}|L1|**2 + rho_{z omega} L1 conj(L2) + rho_{w zeta} L2 conj(L1)
    + rho_{w omega}|L2|**2, with L = (-rho_w, rho_z) at the base point.
    """
    hessian = complex_hessian(rho)
    tangent = np.array([-rho.derivative_value((0, 1, 0, 0)), rho.derivative_value((1, 0, 0, 0))])
    value = complex(tangent @ hessian @ tangent.conj())
    if as_complex:
        return value
    return value.real


def hessian_form(rho):
    """Jet of rho_Z2(L, L) = rho_zz L1**2 + 2 rho_zw L1 L2 + rho_ww L2**2."""
    l1, l2 = tangent_field(rho)
    degree = rho.degree - 2
    l1, l2 = l1.truncate(degree), l2.truncate(degree)
    rho_z, rho_w = rho.pderiv(Z), rho.pderiv(W)
    return (
        rho_z.pderiv(Z) * l1 * l1
        + (rho_z.pderiv(W) * l1 * l2).scale(2)
        + rho_w.pderiv(W) * l2 * l2
    )


def row_generators(rho):
    """The five generator jets of A3: rho_w**3, ..., rho_z**3, rho_Z2(L, L)."""
    rho_z, rho_w = rho.pderiv(Z), rho.pderiv(W)
    return [
        rho_w**3,
        rho_z * rho_w**2,
        rho_z**2 * rho_w,
        rho_z**3,
        hessian_form(rho),
    ]


def _as_surface_point(family, point):
    if isinstance(point, SurfacePoint):
        return point
    z, w = (complex(c) for c in point)
    rho = rho_jet(family, (z, w), 1).value.real
    return SurfacePoint(z=z, w=w, residual=rho - family.default_level)


def a3_matrix(family, point, degree=None):
    degree = settings.DEFAULT_DEGREE if degree is None else degree
    if degree < 2 + LBAR_ORDER:
        raise JetDegreeError(
            f"A3 needs jets of degree >= {2 + LBAR_ORDER} for L-bar**{LBAR_ORDER} of "
            f"rho_Z2(L, L), got {degree}"
        )
    point = _as_surface_point(family, point)
    rho = rho_jet(family, point, degree)
    lbar = LbarOperator(rho)

    entries = np.empty((A3_SIZE, A3_SIZE), dtype=np.complex128)
    for row, generator in enumerate(row_generators(rho)):
        entries[row, 0] = generator.value
        for column in range(1, A3_SIZE):
            generator = lbar(generator)
            entries[row, column] = generator.value
    return A3Matrix(entries=entries, row_generators=tuple(entries[:, 0]), point=point)


def _entries(matrix):
    return matrix.entries if isinstance(matrix, A3Matrix) else np.asarray(matrix, dtype=np.complex128)


def det_a3(matrix):
    """Determinant by LU with partial pivoting; singular input gives 0 up to round-off."""
    entries = _entries(matrix)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", LinAlgWarning)
        lu, pivots = lu_factor(entries, check_finite=False)
    swaps = np.count_nonzero(pivots != np.arange(len(pivots)))
    return complex(np.prod(np.diag(lu)) * (-1) ** swaps)


def normalized_residual(matrix):
    """
    |det| of the matrix with unit columns and then unit rows, in [0, 1].

    The columns are scaled first, so a point-dependent factor on L-bar
    (which rescales column k by its k-th power) drops out. The row pass
    then bounds the result by 1 (Hadamard). A zero row or column gives 0.
    """
    entries = _entries(matrix)
    column_norms = np.linalg.norm(entries, axis=0)
    if np.any(column_norms == 0):
        return 0.0
    scaled = entries / column_norms
    row_norms = np.linalg.norm(scaled, axis=1)
    if np.any(row_norms == 0):
        return 0.0
    return float(min(abs(det_a3(scaled / row_norms[:, None])), 1.0))


def _require_flat_tube(family, op):
    if family.kind != FamilyKind.FLAT_TUBE:
        raise SurfaceDomainError(f"{op} is defined for the flat tube only, got {family}")


def b_matrix(family, point, degree=None):
    """The 4x4 block of L-bar**k (k = 1..4) applied to the first four generators."""
    _require_flat_tube(family, "B matrix")
    return np.array(a3_matrix(family, point, degree).entries[: A3_SIZE - 1, 1:])


def reduction_check(family, point, degree=None):
    """|det A3 - eps**2 det B / 2| / |det A3| on the flat tube."""
    _require_flat_tube(family, "reduction check")
    matrix = a3_matrix(family, point, degree)
    det = det_a3(matrix)
    det_b = det_a3(matrix.entries[: A3_SIZE - 1, 1:])
    return abs(det - 0.5 * family.default_level * det_b) / abs(det)


def monge_ampere_sqrt(family, point, degree=None):
    """|det (d dbar sqrt(rho))| from the jet of sqrt(rho)."""
    degree = settings.DEFAULT_DEGREE if degree is None else degree
    point = _as_surface_point(family, point)
    rho = rho_jet(family, point, degree)
    if rho.value.real <= 0:
        raise SurfaceDomainError(
            f"sqrt(rho) is not smooth where rho = {rho.value.real:g} <= 0 (point {point.coords})"
        )
    return float(abs(np.linalg.det(complex_hessian(jet_sqrt(rho)))))


def cr_frame(family, point, degree=None):
    degree = settings.DEFAULT_DEGREE if degree is None else degree
    point = _as_surface_point(family, point)
    rho = rho_jet(family, point, degree)
    grad = tuple(rho.coeff(alpha) for alpha in ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)))
    levi = levi_form(rho, as_complex=True)
    if abs(levi.imag) > 1e-12 * max(1.0, abs(levi.real)):
        logger.warning("Levi form at %s has imaginary part %.3e", point.coords, levi.imag)
    return CRFrame(
        rho=rho.value.real,
        grad=grad,
        L_coeffs=(-grad[1], grad[0]),
        levi=levi.real,
        hess_LL=hessian_form(rho).value,
    )


def classify(residual, candidate=None, indeterminate=None):
    candidate = settings.CANDIDATE_THRESHOLD if candidate is None else candidate
    indeterminate = settings.INDETERMINATE_THRESHOLD if indeterminate is None else indeterminate
    if residual < candidate:
        return UmbilicFlag.CANDIDATE
    if residual < indeterminate:
        return UmbilicFlag.INDETERMINATE
    return UmbilicFlag.NONUMBILIC
