"""
Process settings from LINDBRAND_* environment variables.

Experiment parameters live in src/cli/schema.py; this module only covers
what every run shares: logging, default worker count, default output
location and the ODE tolerance.
"""

import os
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Callable, Optional, TypeVar

from .exceptions import ConfigurationError
from .validation import MAX_REL_TOL

T = TypeVar("T", int, float)

_TRUTHY = ("true", "1", "yes", "on")
_FALSY = ("false", "0", "no", "off")


class Environment(Enum):
    DEVELOPMENT = "development"
    STAGING = "staging"
    PRODUCTION = "production"


@dataclass(frozen=True)
class LoggingConfig:
    level: str = "INFO"
    json_format: bool = False
    log_file: Optional[str] = None


@dataclass(frozen=True)
class RuntimeConfig:
    """Defaults for experiment execution; flags and config files override them."""
    workers: int = 1
    output_dir: str = "results"


@dataclass(frozen=True)
class NumericsConfig:
    rel_tol: float = 1e-8


@dataclass(frozen=True)
class AppConfig:
    env: Environment
    logging: LoggingConfig
    runtime: RuntimeConfig
    numerics: NumericsConfig
    debug: bool = False


def _env_str(key: str, default: Optional[str] = None) -> Optional[str]:
    value = os.getenv(key)
    return default if value is None or not value.strip() else value.strip()


def _env_flag(key: str, default: bool) -> bool:
    value = (os.getenv(key) or "").strip().lower()
    if value in _TRUTHY:
        return True
    if value in _FALSY:
        return False
    return default


def _env_number(key: str, default: T, cast: Callable[[str], T]) -> T:
    """Numeric variable; unset or unparsable values give the default."""
    value = _env_str(key)
    if value is None:
        return default
    try:
        return cast(value)
    except ValueError:
        return default


@lru_cache(maxsize=1)
def get_config() -> AppConfig:
    """
    Load and cache process configuration.

    Call get_config.cache_clear() to reload after changing the environment.
    """
    try:
        env = Environment((_env_str("LINDBRAND_ENV") or "development").lower())
    except ValueError:
        env = Environment.DEVELOPMENT
    production = env is Environment.PRODUCTION

    return AppConfig(
        env=env,
        debug=_env_flag("LINDBRAND_DEBUG", not production),
        logging=LoggingConfig(
            level=_env_str("LINDBRAND_LOG_LEVEL", "INFO" if production else "DEBUG"),
            json_format=_env_flag("LINDBRAND_LOG_JSON", production),
            log_file=_env_str("LINDBRAND_LOG_FILE"),
        ),
        runtime=RuntimeConfig(
            workers=_env_number("LINDBRAND_WORKERS", 1, int),
            output_dir=_env_str("LINDBRAND_OUTPUT_DIR", "results"),
        ),
        numerics=NumericsConfig(rel_tol=_env_number("LINDBRAND_REL_TOL", 1e-8, float)),
    )


def validate_config() -> bool:
    """
    Check process configuration at startup.

    Raises:
        ConfigurationError: Naming the first offending variable
    """
    config = get_config()
    if config.runtime.workers < 1:
        raise ConfigurationError(
            f"LINDBRAND_WORKERS must be at least 1, got {config.runtime.workers}",
            {"variable": "LINDBRAND_WORKERS"},
        )
    if not 0.0 < config.numerics.rel_tol <= MAX_REL_TOL:
        raise ConfigurationError(
            f"LINDBRAND_REL_TOL must lie in (0, {MAX_REL_TOL:g}], got {config.numerics.rel_tol}",
            {"variable": "LINDBRAND_REL_TOL"},
        )
    return True
