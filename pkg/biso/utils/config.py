from typing import Literal

from pydantic import AliasChoices, Field, PositiveFloat, PositiveInt
from pydantic_settings import BaseSettings, SettingsConfigDict

from biso.models.tolerance import Tolerance


class Settings(BaseSettings):
    """Centralized configuration for biso."""

    model_config = SettingsConfigDict(
        env_prefix="BISO_",
        env_file=".env",
        extra="ignore",
    )

    # Floating-point tolerances
    abs_eps: PositiveFloat = 1e-9
    strict_margin: PositiveFloat = 1e-6
    root_eps: PositiveFloat = 1e-12

    # Ordering scans
    grid_n: int = Field(default=1025, ge=64)
    refine_depth: PositiveInt = 40

    # Rate regions
    region_grid_n: int = Field(default=1025, ge=3)
    frontier_weights: int = Field(default=512, ge=2)

    # General auxiliary search (oracle)
    aux_restarts: PositiveInt = 200
    aux_max_states: int = Field(default=4, ge=1, le=8)
    aux_sweeps: PositiveInt = 25
    aux_line_iters: PositiveInt = 40

    # Largest capacity gap absorbed by erasing the stronger channel
    capacity_slack: PositiveFloat = 1e-6

    # Reproducibility
    seed: int = 0

    # Output
    csv_float_format: str = "%.17g"
    display_sig_fig: int = Field(default=6, ge=1, le=17)

    # Logging (support both BISO_ prefix and the common LOG_LEVEL)
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = Field(
        default="WARNING",
        validation_alias=AliasChoices("BISO_LOG_LEVEL", "LOG_LEVEL"),
    )

    @property
    def tolerance(self) -> Tolerance:
        return Tolerance(
            abs_eps=self.abs_eps,
            strict_margin=self.strict_margin,
            root_eps=self.root_eps,
        )


config = Settings()
