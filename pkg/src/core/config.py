"""Toolkit configuration management using Pydantic Settings."""

from functools import lru_cache

from pydantic import Field, model_validator
from pydantic_settings import BaseSettings, PydanticBaseSettingsSource, SettingsConfigDict


class Settings(BaseSettings):
    """Toolkit settings.

    Values come only from explicit init arguments (the CLI passes its flags
    here). Environment variables and .env files are deliberately not read so
    that a run record is fully determined by its parameter echo.
    """

    model_config = SettingsConfigDict(
        case_sensitive=False,
        extra="ignore",
    )

    # Application
    app_name: str = Field(default="diophantine-toolkit", description="Toolkit name")
    version: str = Field(default="0.1.0", description="Toolkit version echoed in run records")
    log_level: str = Field(default="INFO", description="Root log level (DEBUG/INFO/WARNING/ERROR)")

    # Exact arithmetic
    valuation_cap: int = Field(
        default=64,
        ge=2,
        description="Largest exponent j tried when computing nu_p(b^e - 1) modulo p^j",
    )

    # Interval arithmetic
    precision_start_bits: int = Field(default=128, ge=32, description="Initial working precision in bits")
    precision_cap_bits: int = Field(default=4096, ge=32, description="Precision cap; reaching it is an error")

    # Parallelism
    jobs: int = Field(default=1, ge=1, description="Worker processes for data-parallel scans")
    shards_per_job: int = Field(default=4, ge=1, description="Shards handed to each worker")

    # Default scan ranges (desk scale; full published scale is opt-in via flags)
    default_b_max: int = Field(default=131072, ge=3, description="Default exclusive bound on b for the exceptional-pair scan")
    default_q_set: list[int] = Field(
        default_factory=lambda: [3, 5, 7, 11, 13, 17, 19],
        description="Default exponent set for the exceptional-pair scan",
    )
    default_wieferich_p_max: int = Field(default=2828, ge=3, description="Default exclusive bound for the Wieferich scan")
    default_fermat_b_max: int = Field(default=100000, ge=3, description="Default exclusive bound on b for the Fermat-quotient scan")
    default_fermat_p_max: int = Field(default=500, ge=3, description="Default exclusive bound on p for the Fermat-quotient scan")
    default_y_limit: int = Field(default=1_000_000, ge=1, description="Default denominator limit for the cubic convergent check")
    default_k_max: int = Field(default=60, ge=2, description="Default exponent bound for the brute-force oracle")

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        """Restrict configuration to explicit init arguments."""
        return (init_settings,)

    @model_validator(mode="after")
    def check_precision_window(self) -> "Settings":
        """Reject a precision cap below the starting precision."""
        if self.precision_cap_bits < self.precision_start_bits:
            raise ValueError(
                f"precision_cap_bits ({self.precision_cap_bits}) must be >= "
                f"precision_start_bits ({self.precision_start_bits})"
            )
        return self

    @property
    def shard_count(self) -> int:
        """Total number of shards a scan is cut into."""
        return self.jobs * self.shards_per_job


@lru_cache
def get_settings() -> Settings:
    """Get cached settings singleton.

    Returns:
        Settings: Toolkit settings instance.

    Note:
        Call get_settings.cache_clear() to reload settings.
    """
    return Settings()
