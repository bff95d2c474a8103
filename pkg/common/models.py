from pydantic import BaseModel, ConfigDict


class FrozenModel(BaseModel):
    """Immutable value object with numpy-friendly field types."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)


class MutableModel(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, validate_assignment=True)
