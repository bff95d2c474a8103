import cmath
import math

import numpy as np
import pytest

from common.choices import FamilyKind, UmbilicFlag
from common.exceptions import JetDegreeError, SurfaceDomainError
from hypersurfaces.families import rho_jet
from hypersurfaces.models import FamilyDescriptor
from hypersurfaces.sampling import chart_point, sample_points
from invariants.operations import (
    LbarOperator,
    a3_matrix,
    b_matrix,
    classify,
    complex_hessian,
    cr_frame,
    det_a3,
    hessian_form,
    lbar_apply,
    levi_form,
    monge_ampere_sqrt,
    normalized_residual,
    reduction_check,
    tangent_field,
)
from jets.operations import jet_const
from jets.utils import OMEGA, ZETA


def flat(eps):
    return FamilyDescriptor(kind=FamilyKind.FLAT_TUBE, params=(eps,))


LOG = FamilyDescriptor(kind=FamilyKind.LOG_TUBE, params=(0.5,))
SPHERE = FamilyDescriptor(kind=FamilyKind.SPHERE, params=(1.0,))
ELLIPSOID = FamilyDescriptor(kind=FamilyKind.ELLIPSOID, params=(1.0, 2.0, 1.0, 3.0))
CARTAN_MU = FamilyDescriptor(kind=FamilyKind.CARTAN_MU, params=(2.0,))


def relative(a, b):
    return abs(a - b) / max(abs(a), abs(b))


def test_flat_tube_is_nonumbilic_at_zero_i():
    matrix = a3_matrix(flat(1.0), (0, 1j))
    residual = normalized_residual(matrix)
    assert residual > 1e-6
    assert classify(residual) == UmbilicFlag.NONUMBILIC
    assert abs(det_a3(matrix)) > 0
    assert matrix.row_generators[0] == pytest.approx(1j)
    assert matrix.row_generators[1:4] == pytest.approx((0, 0, 0))


def test_flat_tube_last_row():
    for eps in (0.5, 1.0, 2.0):
        for point in sample_points(flat(eps), count=5, seed=1):
            entries = a3_matrix(flat(eps), point).entries
            assert entries[4, 0] == pytest.approx(eps**2 / 2, rel=1e-12)
            assert np.abs(entries[4, 1:]).max() <= 1e-12


def test_reduction_identity():
    for eps in (0.5, 1.0, 2.0):
        for point in sample_points(flat(eps), count=5, seed=2):
            assert reduction_check(flat(eps), point) <= 1e-10


def test_b_matrix_is_the_lbar_block():
    point = sample_points(flat(1.0), count=1, seed=3)[0]
    block = b_matrix(flat(1.0), point)
    assert block.shape == (4, 4)
    np.testing.assert_array_equal(block, a3_matrix(flat(1.0), point).entries[:4, 1:])


def test_flat_tube_only_operations():
    with pytest.raises(SurfaceDomainError):
        b_matrix(SPHERE, (1, 0))
    with pytest.raises(SurfaceDomainError):
        reduction_check(LOG, (math.e, 1))


def test_det_is_constant_on_the_tube():
    family = flat(1.0)
    points = sample_points(family, count=10, seed=4)
    reference = det_a3(a3_matrix(family, points[0]))
    for point in points[1:]:
        assert relative(det_a3(a3_matrix(family, point)), reference) <= 1e-11


def test_det_scales_as_eps_to_the_fourteenth():
    coords = (0.7, 0.2, -1.1)
    reference = det_a3(a3_matrix(flat(1.0), chart_point(flat(1.0), 1.0, coords)))
    for eps in (0.5, 2.0):
        det = det_a3(a3_matrix(flat(eps), chart_point(flat(eps), eps**2, coords)))
        assert relative(det, reference * eps**14) <= 1e-10


def test_normalized_residual_invariant_under_translation():
    family = flat(1.0)
    point = sample_points(family, count=1, seed=5)[0]
    moved = (point.z + 1.25, point.w - 0.5)
    assert normalized_residual(a3_matrix(family, moved)) == pytest.approx(
        normalized_residual(a3_matrix(family, point)), rel=1e-11
    )


def test_det_invariant_under_rotation():
    family = flat(1.0)
    point = sample_points(family, count=1, seed=6)[0]
    c, s = math.cos(0.8), math.sin(0.8)
    rotated = (c * point.z - s * point.w, s * point.z + c * point.w)
    assert relative(det_a3(a3_matrix(family, rotated)), det_a3(a3_matrix(family, point))) <= 1e-11


def test_sphere_is_umbilical_everywhere():
    for point in sample_points(SPHERE, count=20, seed=7):
        matrix = a3_matrix(SPHERE, point)
        assert np.all(matrix.entries[4] == 0)
        assert normalized_residual(matrix) == 0
        assert classify(normalized_residual(matrix)) == UmbilicFlag.CANDIDATE


@pytest.mark.parametrize("eps", [0.1, 0.5, 1.0])
def test_log_tube_is_nonumbilic(eps):
    family = FamilyDescriptor(kind=FamilyKind.LOG_TUBE, params=(eps,))
    for point in sample_points(family, count=50, seed=8):
        residual = normalized_residual(a3_matrix(family, point))
        assert classify(residual) == UmbilicFlag.NONUMBILIC, point.coords


def test_log_tube_worst_point_matches_flat_tube_preimage():
    # (z, w) = (e^iZ, e^iW) carries the eps = 1 tube onto the log tube.
    family = FamilyDescriptor(kind=FamilyKind.LOG_TUBE, params=(1.0,))
    point = chart_point(family, 1.0, (5 * math.pi / 4, 0.3, -1.1))
    preimage = (-1j * cmath.log(point.z), -1j * cmath.log(point.w))
    assert normalized_residual(a3_matrix(family, point)) > 1e-5
    assert normalized_residual(a3_matrix(flat(1.0), preimage)) > 1e-5


def test_normalized_residual_ignores_column_scaling():
    rng = np.random.default_rng(3)
    entries = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
    scales = np.array([1.0, 20.0, 4e2, 8e3, 1.6e5])
    assert normalized_residual(entries * scales) == pytest.approx(normalized_residual(entries), rel=1e-12)
    assert normalized_residual(np.diag(scales)) == pytest.approx(1)
    entries[:, 2] = 0
    assert normalized_residual(entries) == 0


def test_log_tube_reinhardt_symmetry():
    point = sample_points(LOG, count=1, seed=9)[0]
    rotated = (point.z * cmath.exp(1.3j), point.w * cmath.exp(-0.4j))
    original, moved = a3_matrix(LOG, point), a3_matrix(LOG, rotated)
    assert relative(abs(det_a3(original)), abs(det_a3(moved))) <= 1e-9
    assert normalized_residual(original) == pytest.approx(normalized_residual(moved), rel=1e-9)


def test_degree_seven_agrees_with_degree_six():
    for family in (flat(1.0), LOG):
        for point in sample_points(family, count=3, seed=10):
            det6 = det_a3(a3_matrix(family, point, 6))
            det7 = det_a3(a3_matrix(family, point, 7))
            assert relative(det6, det7) <= 1e-12


def test_a3_needs_degree_six():
    with pytest.raises(JetDegreeError):
        a3_matrix(flat(1.0), (0, 1j), degree=5)


@pytest.mark.parametrize("family", [flat(1.0), LOG, SPHERE, ELLIPSOID, CARTAN_MU], ids=str)
def test_lbar_annihilates_rho(family):
    for point in sample_points(family, count=5, seed=11):
        rho = rho_jet(family, point, 6)
        # L-bar rho is a difference of two equal products; compare against their size.
        scale = max(1.0, np.abs(rho.pderiv(ZETA).coeffs).max() * np.abs(rho.pderiv(OMEGA).coeffs).max())
        assert np.abs(lbar_apply(rho, rho).coeffs).max() <= 1e-13 * scale
        assert abs(rho.value.imag) <= 1e-13 * max(1.0, abs(rho.value))


def test_lbar_degree_checks():
    rho = rho_jet(flat(1.0), (0, 1j), 4)
    lbar = LbarOperator(rho)
    with pytest.raises(JetDegreeError):
        lbar(jet_const(1, 0))
    with pytest.raises(JetDegreeError):
        lbar(rho_jet(flat(1.0), (0, 1j), 5))
    with pytest.raises(JetDegreeError):
        tangent_field(rho.truncate(1))


def test_complex_hessian_of_flat_tube():
    for point in sample_points(flat(2.0), count=5, seed=12):
        np.testing.assert_array_equal(complex_hessian(rho_jet(flat(2.0), point, 2)), np.eye(2) / 2)


def test_hessian_form_of_flat_tube_is_half_rho():
    rho = rho_jet(flat(1.0), (0.3 + 0.8j, -1 + 0.6j), 6)
    np.testing.assert_allclose(hessian_form(rho).coeffs, rho.truncate(4).coeffs / 2, atol=1e-14)


def test_levi_form_and_frame():
    rho = rho_jet(flat(1.0), (0, 1j), 2)
    assert levi_form(rho) == pytest.approx(0.5)
    frame = cr_frame(flat(1.0), (0, 1j))
    assert frame.rho == pytest.approx(1)
    assert frame.levi == pytest.approx(0.5)
    assert frame.hess_LL == pytest.approx(0.5)
    assert frame.L_coeffs == pytest.approx((1j, 0))


def test_levi_form_is_positive_on_tubes():
    for family in (flat(1.0), LOG):
        for point in sample_points(family, count=10, seed=13):
            assert cr_frame(family, point, degree=2).levi > 0


def test_monge_ampere():
    for point in sample_points(flat(1.0), count=10, seed=14):
        assert monge_ampere_sqrt(flat(1.0), point) <= 1e-10
    assert monge_ampere_sqrt(SPHERE, (1.5, 0)) == pytest.approx(0.02, rel=1e-10)
    with pytest.raises(SurfaceDomainError):
        monge_ampere_sqrt(SPHERE, (1, 0))


def test_det_of_known_matrices():
    assert det_a3(np.diag([1, 2, 3, 4, 5])) == pytest.approx(120)
    swapped = np.eye(5)[[1, 0, 2, 3, 4]]
    assert det_a3(swapped) == pytest.approx(-1)
    assert normalized_residual(np.eye(5)) == pytest.approx(1)
    singular = np.ones((5, 5))
    assert normalized_residual(singular) <= 1e-15


def test_classify_thresholds():
    assert classify(1e-8) == UmbilicFlag.CANDIDATE
    assert classify(1e-7) == UmbilicFlag.INDETERMINATE
    assert classify(5e-6) == UmbilicFlag.INDETERMINATE
    assert classify(1e-5) == UmbilicFlag.NONUMBILIC
    assert classify(1e-3, candidate=1e-2, indeterminate=1e-1) == UmbilicFlag.CANDIDATE
