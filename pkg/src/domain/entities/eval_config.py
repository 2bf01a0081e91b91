from pydantic import BaseModel, ConfigDict, Field, model_validator

from src import config


class EvalConfig(BaseModel):
    """
    Bounds and caps for one evaluation session.

    ``minint``/``maxint`` bound enumeration only; arithmetic is unbounded.
    """
    model_config = ConfigDict(frozen=True)

    minint: int = -128
    maxint: int = 127
    deferred_set_card: int = Field(default=2, gt=0)
    max_enum: int = Field(default=2 ** 16, gt=0)
    max_set_size: int = Field(default=2 ** 20, gt=0)
    quick_narrow: bool = True

    @model_validator(mode="after")
    def check_bounds(self) -> "EvalConfig":
        if not self.minint <= 0 <= self.maxint:
            raise ValueError(f"need minint <= 0 <= maxint, got {self.minint}..{self.maxint}")
        return self

    @classmethod
    def from_settings(cls, **overrides) -> "EvalConfig":
        """
        Build a config from process settings, letting non-None overrides win.

        Args:
            **overrides: Field values given explicitly (e.g. CLI flags)

        Returns:
            A validated EvalConfig
        """
        values = {
            "minint": config.MININT,
            "maxint": config.MAXINT,
            "deferred_set_card": config.DEFERRED_SET_CARD,
            "max_enum": config.MAX_ENUM,
            "max_set_size": config.MAX_SET_SIZE,
            "quick_narrow": config.QUICK_NARROW,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)
