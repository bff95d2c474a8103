import math
from typing import Optional

from pydantic import Field, field_validator, model_validator

from common.choices import UmbilicFlag
from common.models import FrozenModel
from crtool import settings
from hypersurfaces.models import SurfacePoint


class Thresholds(FrozenModel):
    """candidate < `candidate` <= indeterminate < `indeterminate` <= nonumbilic."""

    candidate: float = settings.CANDIDATE_THRESHOLD
    indeterminate: float = settings.INDETERMINATE_THRESHOLD

    @model_validator(mode="after")
    def validate_order(self):
        if not 0 < self.candidate < self.indeterminate:
            raise ValueError(
                f"thresholds must satisfy 0 < candidate < indeterminate, got "
                f"{self.candidate}, {self.indeterminate}"
            )
        return self


class ScanRecord(FrozenModel):
    family: str
    kind: str
    eps: Optional[float] = None
    params: tuple[float, ...] = ()
    coords: Optional[tuple[float, ...]] = None
    z: complex
    w: complex
    rho_resid: float = math.nan
    levi: float = math.nan
    det_a3: complex = complex(math.nan, math.nan)
    normalized_residual: float = math.nan
    flag: UmbilicFlag
    error: Optional[str] = None

    @property
    def poisoned(self):
        return self.flag == UmbilicFlag.POISONED


class UmbilicCandidate(FrozenModel):
    point: SurfacePoint
    residual: float
    start: int


class ScalingFit(FrozenModel):
    eps_list: tuple[float, ...]
    log_det: tuple[float, ...]
    slope: float
    intercept: float
    max_residual: float
    spreads: tuple[float, ...]
    valid: bool

    @field_validator("eps_list")
    @classmethod
    def validate_eps_list(cls, value):
        if len(value) < 3 or any(b <= a for a, b in zip(value, value[1:])):
            raise ValueError(f"eps_list must be strictly increasing with >= 3 entries, got {value}")
        return value

    @property
    def constant(self):
        """c in |det A3| = c * eps**slope."""
        return math.exp(self.intercept)


class ScanSummary(FrozenModel):
    count: int
    min_residual: float
    max_residual: float
    min_levi: float
    flag_counts: dict[str, int] = Field(default_factory=dict)

    @property
    def poisoned(self):
        return self.flag_counts.get(UmbilicFlag.POISONED.value, 0)
