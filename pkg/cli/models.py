from pathlib import Path
from typing import Optional

from pydantic import Field, model_validator

from common.choices import FamilyKind, OutputFormat
from common.models import FrozenModel
from crtool import settings
from hypersurfaces.models import FamilyDescriptor


class CliConfig(FrozenModel):
    """Validated values of one command invocation."""

    command: str
    family: Optional[FamilyDescriptor] = None
    degree: int = Field(default=settings.DEFAULT_DEGREE, ge=6)
    seed: int = Field(default=settings.DEFAULT_SEED, ge=0)
    count: Optional[int] = Field(default=None, ge=1)
    tol: Optional[float] = Field(default=None, gt=0)
    out: Optional[Path] = None
    format: OutputFormat = OutputFormat.CSV
    threads: int = Field(default=settings.THREADS, ge=1)

    @model_validator(mode="after")
    def validate_family_enabled(self):
        if (
            self.family is not None
            and self.family.kind == FamilyKind.CARTAN_MU
            and not settings.ENABLE_CARTAN_MU
        ):
            raise ValueError("the cartan-mu family is disabled (CRTOOL_ENABLE_CARTAN_MU)")
        return self


class ClaimResult(FrozenModel):
    suite: str
    name: str
    passed: bool
    measured: str

    def __str__(self):
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.suite}: {self.name} [{self.measured}]"
