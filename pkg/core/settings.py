# core/settings.py

import logging
import os

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError, field_validator

from core.coeffs import DEFAULT_PRIME, validate_prime
from core.errors import ConfigError

# Load environment variables from .env file
load_dotenv()

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")

_VARIABLES = {
    "prime": "PENTAGON_PRIME",
    "trials": "PENTAGON_TRIALS",
    "seed": "PENTAGON_SEED",
    "log_level": "PENTAGON_LOG_LEVEL",
}


class Settings(BaseModel):
    """Run defaults; command-line flags override them"""
    prime: int = Field(DEFAULT_PRIME, description="Default modulus for modp mode")
    trials: int = Field(20, ge=1, description="Default number of modular points")
    seed: int = Field(0, description="Default RNG seed")
    log_level: str = Field("WARNING", description="Log level of the command line")

    @field_validator("prime")
    @classmethod
    def _odd_prime(cls, value: int) -> int:
        return validate_prime(value)

    @field_validator("log_level")
    @classmethod
    def _known_level(cls, value: str) -> str:
        value = value.upper()
        if value not in LOG_LEVELS:
            raise ValueError(f"expected one of {LOG_LEVELS}")
        return value

    @property
    def logging_level(self) -> int:
        return getattr(logging, self.log_level)


def load_settings() -> Settings:
    """
    Read PENTAGON_* variables (environment or .env)

    Raises:
        ConfigError: a variable is set but malformed
    """
    values = {}
    for name, variable in _VARIABLES.items():
        raw = os.getenv(variable)
        if raw is not None and raw.strip():
            values[name] = raw.strip()
    try:
        return Settings.model_validate(values)
    except (ValidationError, ConfigError) as e:
        bad = sorted({_VARIABLES[str(err["loc"][0])] for err in e.errors()}) if isinstance(e, ValidationError) else []
        raise ConfigError(f"Invalid {', '.join(bad) or 'PENTAGON_*'} in environment or .env file: {e}") from None
