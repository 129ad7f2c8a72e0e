from pydantic import BaseModel, ConfigDict


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


class FrozenModel(StrictModel):
    """Immutable value object; numerical inputs are never mutated after validation."""

    model_config = ConfigDict(extra="forbid", frozen=True)
