"""
Process-level settings read from the environment (.env supported).
"""

import logging
import os
from dataclasses import dataclass

from dotenv import load_dotenv


@dataclass
class Settings:
    """Settings that are not part of a scenario."""

    log_level: str = "INFO"
    out_dir: str = "results"
    workers: int = 1
    compare_seeds: int = 10


def load_settings() -> Settings:
    """Load settings from the environment after reading a .env file if present."""
    load_dotenv()
    return Settings(
        log_level=os.getenv("MESHSIM_LOG_LEVEL", "INFO").upper(),
        out_dir=os.getenv("MESHSIM_OUT_DIR", "results"),
        workers=max(int(os.getenv("MESHSIM_WORKERS", "1")), 1),
        compare_seeds=max(int(os.getenv("MESHSIM_COMPARE_SEEDS", "10")), 1),
    )


def configure_logging(level: str = "INFO") -> None:
    """Configure root logging once for the command-line entry point."""
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
