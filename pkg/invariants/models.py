from typing import Any

from pydantic import field_validator

from common.models import FrozenModel
from hypersurfaces.models import SurfacePoint

A3_SIZE = 5


class CRFrame(FrozenModel):
    """First and second order CR data of a defining function at one point."""

    rho: float
    grad: tuple[complex, complex, complex, complex]
    L_coeffs: tuple[complex, complex]
    levi: float
    hess_LL: complex


class A3Matrix(FrozenModel):
    """
    Rows are the generators (rho_w**3, rho_z rho_w**2, rho_z**2 rho_w,
    rho_z**3, rho_Z2(L, L)); column k holds L-bar**k applied to the generator.
    """

    entries: Any
    row_generators: tuple[complex, complex, complex, complex, complex]
    point: SurfacePoint

    @field_validator("entries")
    @classmethod
    def validate_shape(cls, value):
        if getattr(value, "shape", None) != (A3_SIZE, A3_SIZE):
            raise ValueError(f"A3 entries must be a 5x5 array, got shape {getattr(value, 'shape', None)}")
        value.setflags(write=False)
        return value
