"""Application configuration from environment."""
import os
from pathlib import Path
from typing import Literal

from pydantic_settings import BaseSettings, SettingsConfigDict

# Resolve .env from the repository root (parent of secrecy_regions/) so it works whether the
# CLI is run from the repo or from an installed checkout.
_REPO_ROOT = Path(__file__).resolve().parent.parent
_ENV_FILE = _REPO_ROOT / ".env"


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="SECRECY_REGIONS_",
        env_file=str(_ENV_FILE),
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Sweep parallelism cap (SECRECY_REGIONS_THREADS); 0 = one worker per CPU.
    threads: int = 0

    # Sweep defaults, overridden per invocation by --steps / --angles / --samples / --seed
    default_steps: int = 21
    default_angles: int = 181
    default_samples: int = 200
    default_seed: int = 20080101
    default_format: Literal["csv", "json"] = "csv"

    # Splits evaluated per vectorized block in Gaussian sweeps
    sweep_chunk_size: int = 2048

    # Desk-scale guard for discrete channels: every alphabet (including U, V1, V2) at most this size
    max_dm_alphabet: int = 4

    # Monte Carlo draws used when validating Gaussian closed forms
    mc_samples: int = 1_000_000

    log_level: str = "INFO"

    @property
    def worker_count(self) -> int:
        if self.threads > 0:
            return self.threads
        return max(1, os.cpu_count() or 1)


settings = Settings()
