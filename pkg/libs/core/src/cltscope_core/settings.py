import os
from typing import Self, Mapping

from pydantic import Field, field_validator

from .types import FrozenModel
from .logger import LogMode

ENV_PREFIX = "CLT_SCOPE_"


class Settings(FrozenModel):
    """Process-wide knobs read from the environment (``CLT_SCOPE_*``)."""

    threads: int = Field(default=1, ge=1)
    log_mode: LogMode = "prod"
    log_level: str | None = None
    log_console: bool = False
    log_file: str | None = None

    @field_validator("log_level")
    @classmethod
    def _upper_level(cls, value: str | None) -> str | None:
        return value.upper() if value else None

    @classmethod
    def from_env(cls, environ: Mapping[str, str] | None = None) -> Self:
        environ = os.environ if environ is None else environ
        values: dict[str, str] = {}
        for name in cls.model_fields:
            raw = environ.get(f"{ENV_PREFIX}{name.upper()}")
            if raw is not None and raw.strip():
                values[name] = raw.strip()
        return cls.model_validate(values)

    def with_overrides(self, **overrides: object) -> Self:
        changes = {key: value for key, value in overrides.items() if value is not None}
        return self.model_validate({**self.model_dump(), **changes})
