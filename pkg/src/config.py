"""Configuration management for the spectral projection toolkit."""
import logging
import os
from dataclasses import dataclass
from typing import Callable, TypeVar

from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

logger = logging.getLogger(__name__)

T = TypeVar("T")


def _env(name: str, default: T, cast: Callable[[str], T]) -> T:
    """Read an environment variable, falling back to the default on bad input."""
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return cast(raw.strip())
    except ValueError:
        logger.warning(f"Invalid {name} value {raw!r}, using default {default!r}")
        return default


@dataclass
class Config:
    """Application configuration."""

    # Application Environment
    environment: str = "development"
    log_level: str = "INFO"

    # Worker pool for grid sweeps
    threads: int = 1

    # Spectral line integrals
    lambda_max: float = 128.0
    lambda_step: float = 0.05

    # Quadrature resolution
    radial_nodes: int = 256
    circle_nodes: int = 256
    ode_rtol: float = 1e-12

    # Artifacts and caching
    output_dir: str = "reports"
    cache_size: int = 4096

    @classmethod
    def from_env(cls) -> "Config":
        """Load configuration from environment variables."""
        return cls(
            environment=os.getenv("ENVIRONMENT", "development"),
            log_level=os.getenv("LOG_LEVEL", "INFO"),
            threads=max(1, _env("SPECTRAL_THREADS", 1, int)),
            lambda_max=_env("SPECTRAL_LAMBDA_MAX", 128.0, float),
            lambda_step=_env("SPECTRAL_LAMBDA_STEP", 0.05, float),
            radial_nodes=_env("SPECTRAL_RADIAL_NODES", 256, int),
            circle_nodes=_env("SPECTRAL_CIRCLE_NODES", 256, int),
            ode_rtol=_env("SPECTRAL_ODE_RTOL", 1e-12, float),
            output_dir=os.getenv("SPECTRAL_OUTPUT_DIR", "reports"),
            cache_size=_env("SPECTRAL_CACHE_SIZE", 4096, int),
        )

    @property
    def use_threads(self) -> bool:
        """Check if grid sweeps should run on a worker pool."""
        return self.threads > 1

    @property
    def is_production(self) -> bool:
        """Check if running in production mode."""
        return self.environment == "production"


# Global configuration instance
config = Config.from_env()
