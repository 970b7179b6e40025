"""
Configuration settings for the synthesis library, CLI and tool server.
"""

from typing import Optional

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """
    Numerical defaults, read from ``BLOCH_*`` environment variables or ``.env``.
    """

    model_config = SettingsConfigDict(
        env_prefix="BLOCH_", env_file=".env", env_file_encoding="utf-8", extra="ignore"
    )

    # Synthesis
    tol: float = 1e-10
    exclusion_factor: float = 3.0

    # Root finding
    root_samples: int = 256
    root_xtol: float = 1e-14
    arccos_clamp: float = 1e-9

    # Switching curves
    tangent_step_fraction: float = 1e-4
    refraction_residual_tol: float = 1e-8

    # Oracle
    oracle_max_steps: int = 20000

    seed: int = 0

    # Logging
    log_level: str = "INFO"
    debug: bool = False

    server_name: str = "bloch-synthesis"


# Global settings instance
_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """
    Get the global settings instance.

    Returns:
        Settings: The settings instance.
    """
    global _settings
    if _settings is None:
        _settings = Settings()
    return _settings


def reset_settings() -> None:
    """Drop the cached instance so the next call re-reads the environment."""
    global _settings
    _settings = None
