"""
Functional interface to jet arithmetic.

The scalar functions exp, log and x**p are composed with the nilpotent part
of a jet: for a = c + N with N having no constant term, N**(D+1) vanishes
after truncation, so each series terminates after D terms and is exact to
the working degree.
"""

import cmath
import logging

import numpy as np

from common.exceptions import JetDegreeError, JetDomainError

from .models import Jet
from .utils import NUM_VARIABLES, jet_size

logger = logging.getLogger(__name__)

# Relative size of an imaginary part still accepted as a real constant term.
REAL_CONSTANT_TOLERANCE = 1e-12


def jet_const(value, degree, base=None):
    if degree < 0:
        raise JetDegreeError(f"jet degree must be non-negative, got {degree}")
    coeffs = np.zeros(jet_size(degree), dtype=np.complex128)
    coeffs[0] = value
    return Jet(coeffs, degree, base)


def jet_var(index, base_value, degree, base=None):
    """Coordinate jet of z, w, zeta or omega (index 0..3) at `base_value`."""
    if not 0 <= index < NUM_VARIABLES:
        raise ValueError(f"variable index must be in 0..3, got {index}")
    if degree < 1:
        raise JetDegreeError("a coordinate jet needs degree >= 1 to carry its linear part")
    coeffs = np.zeros(jet_size(degree), dtype=np.complex128)
    coeffs[0] = base_value
    # Positions 1..4 hold the linear monomials in the order z, w, zeta, omega.
    coeffs[1 + index] = 1.0
    return Jet(coeffs, degree, base)


def coordinate_jets(z, w, degree):
    """Jets of (z, w, zeta, omega) at the polarized base point (z, w, conj z, conj w)."""
    base = (complex(z), complex(w), complex(z).conjugate(), complex(w).conjugate())
    return tuple(jet_var(index, base[index], degree, base) for index in range(NUM_VARIABLES))


def jet_add(*jets):
    result = jets[0]
    for jet in jets[1:]:
        result = result.add(jet)
    return result


def jet_sub(a, b):
    return a.sub(b)


def jet_neg(a):
    return a.neg()


def jet_scale(a, scalar):
    return a.scale(scalar)


def jet_mul(a, b):
    return a.mul(b)


def jet_pow(a, n):
    return a.pow(n)


def jet_pderiv(a, index):
    return a.pderiv(index)


def jet_truncate(a, degree):
    return a.truncate(degree)


def jet_value(a):
    return a.value


def jet_coeff(a, multi_index):
    return a.coeff(multi_index)


def jet_derivative_value(a, multi_index):
    return a.derivative_value(multi_index)


def jet_evaluate(a, displacement):
    return a.evaluate(displacement)


def _nilpotent_part(a):
    return a.sub(a.value)


def _compose(a, constant, series_coefficients):
    """sum_k series_coefficients[k] * x**k with x = (a - c) / c, times `constant`."""
    x = _nilpotent_part(a).scale(1 / a.value)
    result = jet_const(series_coefficients[0], a.degree, a.base)
    term = None
    for k in range(1, a.degree + 1):
        term = x if term is None else term.mul(x)
        result = result.add(term.scale(series_coefficients[k]))
    return result.scale(constant)


def _check_nonzero_constant(a, op):
    if a.value == 0:
        raise JetDomainError(f"{op} needs a non-zero constant term (base {a.base})")


def jet_exp(a):
    nilpotent = _nilpotent_part(a)
    result = jet_const(1.0, a.degree, a.base)
    term = result
    for k in range(1, a.degree + 1):
        term = term.mul(nilpotent).scale(1 / k)
        result = result.add(term)
    return result.scale(cmath.exp(a.value))


def jet_log(a):
    """Principal logarithm; the constant term must be a positive real number."""
    c = a.value
    if c.real <= 0 or abs(c.imag) > REAL_CONSTANT_TOLERANCE * abs(c):
        raise JetDomainError(
            f"log needs a positive real constant term, got {c!r} (base {a.base})"
        )
    coefficients = [0.0] + [(-1) ** (k + 1) / k for k in range(1, a.degree + 1)]
    return _compose(a, 1.0, coefficients).add(np.log(c.real))


def jet_power(a, p):
    """a**p for real p on the principal branch around the constant term."""
    _check_nonzero_constant(a, f"power {p}")
    coefficients = [1.0]
    for k in range(1, a.degree + 1):
        coefficients.append(coefficients[-1] * (p - k + 1) / k)
    return _compose(a, complex(a.value) ** p, coefficients)


def jet_sqrt(a):
    _check_nonzero_constant(a, "sqrt")
    coefficients = [1.0]
    for k in range(1, a.degree + 1):
        coefficients.append(coefficients[-1] * (0.5 - k + 1) / k)
    return _compose(a, cmath.sqrt(a.value), coefficients)


def jet_reciprocal(a):
    _check_nonzero_constant(a, "reciprocal")
    return _compose(a, 1 / a.value, [(-1) ** k for k in range(a.degree + 1)])


def jet_div(a, b):
    return a.mul(jet_reciprocal(b))
