"""
Runtime Settings

Environment-driven configuration for the oracle and the command line.

    PIMETRIC_WORKERS    cap on oracle worker processes (default: physical cores)
    PIMETRIC_LOG_LEVEL  log level for the command line (default: WARNING)
    PIMETRIC_LOG_FILE   optional path for JSON log output

Command-line flags take precedence over the environment. The oracle's
feasibility caps are constants in app/oracle.py and are not configurable.
"""

import os
from dataclasses import dataclass
from typing import Mapping, Optional

import psutil


WORKERS_ENV = "PIMETRIC_WORKERS"
LOG_LEVEL_ENV = "PIMETRIC_LOG_LEVEL"
LOG_FILE_ENV = "PIMETRIC_LOG_FILE"

DEFAULT_LOG_LEVEL = "WARNING"
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def detect_cores() -> int:
    """Physical core count, falling back to logical cores and then to 1."""
    return psutil.cpu_count(logical=False) or psutil.cpu_count(logical=True) or 1


def parse_workers(value: str) -> int:
    """
    Parse a worker count.

    Raises:
        ValueError: If the value is not an integer >= 1
    """
    try:
        workers = int(value)
    except (TypeError, ValueError):
        raise ValueError(f"worker count must be an integer, got {value!r}")
    if workers < 1:
        raise ValueError(f"worker count must be >= 1, got {workers}")
    return workers


def parse_log_level(value: str) -> str:
    level = value.strip().upper()
    if level not in LOG_LEVELS:
        raise ValueError(f"log level must be one of {', '.join(LOG_LEVELS)}, got {value!r}")
    return level


@dataclass(frozen=True)
class Settings:
    workers: int
    log_level: str = DEFAULT_LOG_LEVEL
    log_file: Optional[str] = None

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None) -> "Settings":
        """
        Read settings from the environment (os.environ by default).

        Raises:
            ValueError: If a variable is set to an invalid value
        """
        env = os.environ if environ is None else environ
        raw_workers = env.get(WORKERS_ENV)
        workers = parse_workers(raw_workers) if raw_workers else detect_cores()
        raw_level = env.get(LOG_LEVEL_ENV)
        level = parse_log_level(raw_level) if raw_level else DEFAULT_LOG_LEVEL
        return cls(workers=workers, log_level=level, log_file=env.get(LOG_FILE_ENV) or None)


def resolve_workers(workers: Optional[int] = None) -> int:
    """An explicit worker count wins; otherwise PIMETRIC_WORKERS or the core count."""
    if workers is not None:
        return parse_workers(workers)
    return Settings.from_env().workers
