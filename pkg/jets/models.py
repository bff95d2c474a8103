import numbers

import numpy as np

from common.exceptions import JetDegreeError

from .utils import (
    NUM_VARIABLES,
    VARIABLE_NAMES,
    derivative_table,
    factorial_weights,
    jet_size,
    multi_indices,
    normalize_multi_index,
    product_table,
    rank_lookup,
)


class Jet:
    """
    Truncated Taylor polynomial in the polarized variables (z, w, zeta, omega).

    Coefficients are stored densely in the graded order of
    `jets.utils.multi_indices(degree)`. The coefficient array is read-only and
    every operation returns a new Jet. The base point is carried for messages
    only; arithmetic never reads it.
    """

    __slots__ = ("_coeffs", "_degree", "_base")
    __array_ufunc__ = None

    def __init__(self, coeffs, degree, base=None):
        if degree < 0:
            raise JetDegreeError(f"jet degree must be non-negative, got {degree}")
        coeffs = np.array(coeffs, dtype=np.complex128)
        if coeffs.shape != (jet_size(degree),):
            raise JetDegreeError(
                f"degree {degree} jet needs {jet_size(degree)} coefficients, got {coeffs.shape}"
            )
        coeffs.setflags(write=False)
        self._coeffs = coeffs
        self._degree = int(degree)
        self._base = tuple(complex(b) for b in base) if base is not None else None

    @property
    def coeffs(self):
        return self._coeffs

    @property
    def degree(self):
        return self._degree

    @property
    def base(self):
        return self._base

    @property
    def value(self):
        return complex(self._coeffs[0])

    def __repr__(self):
        return f"Jet(degree={self._degree}, value={self.value!r}, base={self._base!r})"

    def _like(self, coeffs, degree=None):
        return Jet(coeffs, self._degree if degree is None else degree, self._base)

    def _check_same_degree(self, other, op):
        if self._degree != other.degree:
            raise JetDegreeError(
                f"cannot {op} jets of degree {self._degree} and {other.degree} "
                f"(base {self._base})"
            )

    def coeff(self, multi_index):
        alpha = normalize_multi_index(multi_index)
        if sum(alpha) > self._degree:
            return 0j
        return complex(self._coeffs[rank_lookup(self._degree)[alpha]])

    def derivative_value(self, multi_index):
        """Partial derivative at the base point, i.e. coefficient times alpha!."""
        alpha = normalize_multi_index(multi_index)
        if sum(alpha) > self._degree:
            raise JetDegreeError(
                f"derivative of order {sum(alpha)} is not carried by a degree {self._degree} jet"
            )
        pos = rank_lookup(self._degree)[alpha]
        return complex(self._coeffs[pos] * factorial_weights(self._degree)[pos])

    # ring operations

    def add(self, other):
        if isinstance(other, Jet):
            self._check_same_degree(other, "add")
            return self._like(self._coeffs + other.coeffs)
        coeffs = self._coeffs.copy()
        coeffs[0] += other
        return self._like(coeffs)

    def neg(self):
        return self._like(-self._coeffs)

    def sub(self, other):
        if isinstance(other, Jet):
            self._check_same_degree(other, "subtract")
            return self._like(self._coeffs - other.coeffs)
        return self.add(-other)

    def scale(self, scalar):
        return self._like(self._coeffs * complex(scalar))

    def mul(self, other):
        if not isinstance(other, Jet):
            return self.scale(other)
        self._check_same_degree(other, "multiply")
        left, right, target = product_table(self._degree)
        products = self._coeffs[left] * other.coeffs[right]
        size = jet_size(self._degree)
        coeffs = np.bincount(target, weights=products.real, minlength=size) + 1j * np.bincount(
            target, weights=products.imag, minlength=size
        )
        return self._like(coeffs)

    def pow(self, n):
        if not isinstance(n, numbers.Integral) or n < 0:
            raise ValueError(f"jet powers take a non-negative integer exponent, got {n!r}")
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result.mul(base)
            n >>= 1
            if n:
                base = base.mul(base)
        if result is None:
            return self._like(np.eye(1, jet_size(self._degree), dtype=np.complex128)[0])
        return result

    # calculus

    def pderiv(self, index):
        if not 0 <= index < NUM_VARIABLES:
            raise ValueError(f"variable index must be in 0..3, got {index}")
        if self._degree < 1:
            raise JetDegreeError(
                f"cannot differentiate a degree 0 jet in {VARIABLE_NAMES[index]} (base {self._base})"
            )
        source, factor = derivative_table(self._degree, index)
        return self._like(self._coeffs[source] * factor, self._degree - 1)

    def truncate(self, degree):
        if degree > self._degree:
            raise JetDegreeError(f"cannot raise a degree {self._degree} jet to degree {degree}")
        if degree < 0:
            raise JetDegreeError(f"jet degree must be non-negative, got {degree}")
        return self._like(self._coeffs[: jet_size(degree)], degree)

    def evaluate(self, displacement):
        """Value of the truncated polynomial at base + displacement."""
        delta = np.asarray(displacement, dtype=np.complex128)
        if delta.shape != (NUM_VARIABLES,):
            raise ValueError("displacement must have four components")
        monomials = np.prod(delta[np.newaxis, :] ** multi_indices(self._degree), axis=1)
        return complex(np.dot(self._coeffs, monomials))

    # operator sugar

    def __add__(self, other):
        return self.add(other)

    __radd__ = __add__

    def __sub__(self, other):
        return self.sub(other)

    def __rsub__(self, other):
        return self.neg().add(other)

    def __neg__(self):
        return self.neg()

    def __mul__(self, other):
        return self.mul(other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet):
            from .operations import jet_div

            return jet_div(self, other)
        return self.scale(1 / complex(other))

    def __pow__(self, n):
        return self.pow(n)
