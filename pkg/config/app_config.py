"""
Application Configuration
Loads solver guardrails, tolerances and service settings from the environment
"""
from typing import Optional

from dotenv import load_dotenv
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

# Load environment variables from .env file
load_dotenv()

# Global settings instance
_settings: Optional["Settings"] = None


class Settings(BaseSettings):
    """Engine settings loaded from PROPHET_* environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="PROPHET_",
        env_file=".env",
        case_sensitive=False,
        extra="ignore",
    )

    # Exact computation guardrails
    enumeration_cap: int = Field(default=10_000_000, ge=1)
    best_response_max_agents: int = Field(default=4, ge=1)

    # Numerical tolerances
    probability_tolerance: float = 1e-12
    tolerance: float = 1e-9

    # Monte Carlo defaults
    default_num_samples: int = Field(default=100_000, ge=2)
    default_seed: int = 0

    # Finite stand-in for unbounded rewards in tight instances
    infinity_surrogate_factor: float = Field(default=10.0, gt=1.0)

    # Observability
    log_level: str = "INFO"
    log_json: bool = False

    # HTTP surface
    host: str = "127.0.0.1"
    port: int = 8000


def get_settings() -> Settings:
    """Get global settings instance"""
    global _settings
    if _settings is None:
        _settings = Settings()
    return _settings


def reload_settings() -> Settings:
    """Reload settings from environment"""
    global _settings
    _settings = Settings()
    return _settings
