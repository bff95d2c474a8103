import math
from typing import Optional

from pydantic import field_validator, model_validator

from common.choices import FamilyKind
from common.models import FrozenModel

# Parameter names per family, in the order they are stored.
PARAMETER_NAMES = {
    FamilyKind.FLAT_TUBE: ("eps",),
    FamilyKind.LOG_TUBE: ("eps",),
    FamilyKind.SPHERE: ("r",),
    FamilyKind.ELLIPSOID: ("a", "b", "c", "d"),
    FamilyKind.CARTAN_MU: ("alpha",),
}


class FamilyDescriptor(FrozenModel):
    """A hypersurface family with its real parameters."""

    kind: FamilyKind
    params: tuple[float, ...]

    @field_validator("params")
    @classmethod
    def validate_params_positive(cls, value):
        if any(not math.isfinite(p) or p <= 0 for p in value):
            raise ValueError(f"all family parameters must be finite and positive, got {value}")
        return value

    @model_validator(mode="after")
    def validate_params_for_kind(self):
        expected = PARAMETER_NAMES[self.kind]
        if len(self.params) != len(expected):
            raise ValueError(
                f"{self.kind.value} takes parameters {', '.join(expected)}, got {self.params}"
            )
        if self.kind == FamilyKind.CARTAN_MU and self.params[0] <= 1:
            raise ValueError(f"cartan-mu needs alpha > 1, got {self.params[0]}")
        return self

    @property
    def eps(self):
        if self.kind not in (FamilyKind.FLAT_TUBE, FamilyKind.LOG_TUBE):
            return None
        return self.params[0]

    @property
    def named_params(self):
        return dict(zip(PARAMETER_NAMES[self.kind], self.params))

    @property
    def default_level(self):
        """eps**2 for the tubes; 0 for families with the constant moved into rho."""
        if self.eps is not None:
            return self.eps**2
        return 0.0

    def __str__(self):
        return describe(self)


class SurfacePoint(FrozenModel):
    z: complex
    w: complex
    residual: float = 0.0
    param: Optional[tuple[float, ...]] = None
    iterations: int = 0

    @property
    def coords(self):
        return (self.z, self.w)

    @property
    def real_coords(self):
        return (self.z.real, self.z.imag, self.w.real, self.w.imag)


def describe(family):
    args = ",".join(f"{name}={value:g}" for name, value in family.named_params.items())
    return f"{family.kind.value}({args})"


def parse_family(kind, eps=None, r=None, params=None, alpha=None):
    """Build a descriptor from the loose values a command line provides."""
    kind = FamilyKind(kind)
    if kind in (FamilyKind.FLAT_TUBE, FamilyKind.LOG_TUBE):
        values = (eps,)
    elif kind == FamilyKind.SPHERE:
        values = (1.0 if r is None else r,)
    elif kind == FamilyKind.ELLIPSOID:
        values = tuple(params) if params is not None else None
    else:
        values = (alpha,)
    if values is None or any(v is None for v in values):
        names = ", ".join(PARAMETER_NAMES[kind])
        raise ValueError(f"{kind.value} needs {names}")
    return FamilyDescriptor(kind=kind, params=tuple(float(v) for v in values))
