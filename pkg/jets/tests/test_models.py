import numpy as np
import pytest

from common.exceptions import JetDegreeError
from jets.models import Jet
from jets.operations import coordinate_jets, jet_const, jet_var
from jets.utils import OMEGA, W, Z, ZETA, jet_size


def random_jet(rng, degree=6, constant=None):
    size = jet_size(degree)
    coeffs = 0.3 * (rng.normal(size=size) + 1j * rng.normal(size=size))
    if constant is not None:
        coeffs[0] = constant
    return Jet(coeffs, degree)


def test_coefficients_are_read_only():
    jet = jet_const(7, 3)
    with pytest.raises(ValueError):
        jet.coeffs[0] = 1


def test_value_of_constant_and_zero_jets():
    assert jet_const(7, 6).value == 7
    assert jet_const(0, 6).value == 0


def test_wrong_coefficient_count_raises():
    with pytest.raises(JetDegreeError):
        Jet(np.zeros(5), 2)


def test_additive_inverse_and_identity():
    rng = np.random.default_rng(1)
    jet = random_jet(rng)
    assert np.all((jet + (-jet)).coeffs == 0)
    assert np.array_equal(jet.scale(1).coeffs, jet.coeffs)


def test_add_z_and_zeta_at_real_base():
    z, w, zeta, omega = coordinate_jets(1, 1, 3)
    total = z + zeta
    assert total.value == 2
    assert total.coeff((1, 0, 0, 0)) == 1
    assert total.coeff((0, 0, 1, 0)) == 1


def test_degree_mismatch_raises():
    with pytest.raises(JetDegreeError):
        jet_const(1, 3) + jet_const(1, 4)
    with pytest.raises(JetDegreeError):
        jet_const(1, 3) * jet_const(1, 4)


def test_multiplicative_identity():
    rng = np.random.default_rng(2)
    jet = random_jet(rng)
    assert np.allclose((jet_const(1, 6) * jet).coeffs, jet.coeffs, rtol=0, atol=0)


def test_square_of_z_at_origin():
    z = jet_var(Z, 0, 6)
    square = z * z
    assert square.coeff((2, 0, 0, 0)) == 1
    assert np.count_nonzero(square.coeffs) == 1


def test_ring_laws():
    rng = np.random.default_rng(3)
    a, b, c = (random_jet(rng) for _ in range(3))
    np.testing.assert_allclose((a * b).coeffs, (b * a).coeffs, atol=1e-14)
    np.testing.assert_allclose(((a * b) * c).coeffs, (a * (b * c)).coeffs, atol=1e-13)
    np.testing.assert_allclose((a * (b + c)).coeffs, (a * b + a * c).coeffs, atol=1e-13)


def test_integer_jets_multiply_exactly():
    rng = np.random.default_rng(4)
    a = Jet(rng.integers(-5, 5, jet_size(6)), 6)
    b = Jet(rng.integers(-5, 5, jet_size(6)), 6)
    assert np.array_equal((a * b).coeffs, (b * a).coeffs)


def test_leibniz_rule():
    rng = np.random.default_rng(5)
    a, b = random_jet(rng), random_jet(rng)
    for index in (Z, W, ZETA, OMEGA):
        lhs = (a * b).pderiv(index)
        rhs = a.pderiv(index) * b.truncate(5) + a.truncate(5) * b.pderiv(index)
        np.testing.assert_allclose(lhs.coeffs, rhs.coeffs, atol=1e-13)


def test_truncation_commutes_with_products():
    rng = np.random.default_rng(6)
    a, b = random_jet(rng), random_jet(rng)
    np.testing.assert_allclose(
        (a * b).truncate(3).coeffs, (a.truncate(3) * b.truncate(3)).coeffs, atol=1e-14
    )


def test_truncate_rejects_higher_degree():
    with pytest.raises(JetDegreeError):
        jet_const(1, 3).truncate(4)


def test_power_identities():
    rng = np.random.default_rng(7)
    jet = random_jet(rng)
    assert np.array_equal((jet**0).coeffs, jet_const(1, 6).coeffs)
    assert np.array_equal((jet**1).coeffs, jet.coeffs)
    np.testing.assert_allclose((jet**3).coeffs, (jet * jet * jet).coeffs, atol=1e-13)


def test_negative_power_raises():
    with pytest.raises(ValueError):
        jet_const(2, 3) ** -1


def test_pderiv_lowers_degree():
    z = jet_var(Z, 2.0, 4)
    derivative = (z**2).pderiv(Z)
    assert derivative.degree == 3
    assert derivative.value == 4
    assert derivative.coeff((1, 0, 0, 0)) == 2


def test_pderiv_of_constant_is_zero():
    derivative = jet_const(5, 6).pderiv(ZETA)
    assert derivative.degree == 5
    assert np.all(derivative.coeffs == 0)


def test_pderiv_of_degree_zero_raises():
    with pytest.raises(JetDegreeError):
        jet_const(5, 0).pderiv(Z)


def test_derivative_value_applies_factorials():
    z = jet_var(Z, 2.0, 6)
    cube = z**3
    assert cube.derivative_value((3, 0, 0, 0)) == 6
    assert cube.derivative_value((2, 0, 0, 0)) == 12
    with pytest.raises(JetDegreeError):
        cube.truncate(2).derivative_value((3, 0, 0, 0))


def test_coeff_above_degree_is_zero():
    assert jet_const(1, 2).coeff((3, 0, 0, 0)) == 0


def test_evaluate_polynomial_exactly():
    z, w, zeta, omega = coordinate_jets(0.5 + 1j, -0.25j, 2)
    jet = (z + w) * (zeta - omega)
    delta = np.array([0.1, -0.2j, 0.3, 0.05 + 0.05j])
    base = np.array(z.base)
    point = base + delta
    expected = (point[0] + point[1]) * (point[2] - point[3])
    assert jet.evaluate(delta) == pytest.approx(expected, abs=1e-15)


def test_numpy_scalars_defer_to_jets():
    jet = jet_var(W, 1.0, 2)
    product = np.float64(2.0) * jet
    assert isinstance(product, Jet)
    assert product.coeff((0, 1, 0, 0)) == 2


def test_division_by_jet_and_scalar():
    rng = np.random.default_rng(8)
    a = random_jet(rng)
    b = random_jet(rng, constant=1.5)
    np.testing.assert_allclose(((a / b) * b).coeffs, a.coeffs, rtol=1e-10, atol=1e-10)
    np.testing.assert_allclose((a / 2).coeffs, a.coeffs / 2)
