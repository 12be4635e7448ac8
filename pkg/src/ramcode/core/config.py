"""
Configuration management for ramcode.
"""

from pathlib import Path
from typing import Optional

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class LinalgSettings(BaseSettings):
    """GF(2) linear algebra limits."""

    enumeration_budget: int = Field(default=2**22, ge=1)
    table_bits: int = Field(default=20, ge=1, le=26)
    certificate_radius: int = Field(default=4, ge=1)
    # above this, rank falls back to sparse elimination
    dense_limit_mb: int = Field(default=1024, ge=1)

    model_config = SettingsConfigDict(env_prefix="RAMCODE_LINALG_")


class LsvSettings(BaseSettings):
    """Quotient complex construction limits."""

    max_group_size: int = Field(default=200_000, ge=1)

    model_config = SettingsConfigDict(env_prefix="RAMCODE_LSV_")


class DecoderSettings(BaseSettings):
    """Decoder limits."""

    # 0 means "as many rounds as the code has bits"
    bitflip_rounds: int = Field(default=0, ge=0)
    max_local_degree: int = Field(default=20, ge=1, le=24)
    radius_trials: int = Field(default=1000, ge=1)

    model_config = SettingsConfigDict(env_prefix="RAMCODE_DECODER_")


class SimulationSettings(BaseSettings):
    """Monte Carlo defaults."""

    trials: int = Field(default=1000, ge=1)
    seed: int = Field(default=42, ge=0)

    model_config = SettingsConfigDict(env_prefix="RAMCODE_SIM_")


class LoggingSettings(BaseSettings):
    """Logging configuration settings."""

    level: str = Field(default="WARNING")
    format: str = Field(
        default="<green>{time:HH:mm:ss}</green> | <level>{level: <8}</level> | "
        "<cyan>{extra[name]}</cyan> - <level>{message}</level>"
    )
    file_path: Optional[Path] = Field(default=None)
    rotation: str = Field(default="10 MB")
    retention: str = Field(default="30 days")

    model_config = SettingsConfigDict(env_prefix="RAMCODE_LOG_")


class Settings(BaseSettings):
    """Main application settings."""

    # Environment
    environment: str = Field(default="development")
    debug: bool = Field(default=False)

    # Application info
    app_name: str = Field(default="ramcode - quantum codes from chain complexes")
    version: str = Field(default="0.3.0")

    output_dir: Path = Field(default=Path("output"))

    # Sub-settings
    linalg: LinalgSettings = Field(default_factory=LinalgSettings)
    lsv: LsvSettings = Field(default_factory=LsvSettings)
    decoder: DecoderSettings = Field(default_factory=DecoderSettings)
    simulation: SimulationSettings = Field(default_factory=SimulationSettings)
    logging: LoggingSettings = Field(default_factory=LoggingSettings)

    @field_validator("output_dir", mode="before")
    @classmethod
    def coerce_path(cls, v):
        if isinstance(v, str):
            v = Path(v)
        return v

    @property
    def is_development(self) -> bool:
        """Check if running in development mode."""
        return self.environment.lower() == "development"

    @property
    def is_production(self) -> bool:
        """Check if running in production mode."""
        return self.environment.lower() == "production"

    model_config = SettingsConfigDict(
        env_prefix="RAMCODE_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )


# Global settings instance
settings = Settings()
