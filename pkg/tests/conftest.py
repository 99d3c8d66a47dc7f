"""
Shared test configuration.

Logging is configured once before any logger is first used, so module-level
loggers cache the stdlib-backed configuration instead of structlog's
default stdout printer.
"""

from pathlib import Path

import pytest

from app.logging_config import setup_logging


FIXTURES_DIR = Path(__file__).resolve().parent / "fixtures"


def pytest_configure(config):
    setup_logging(log_level="WARNING")


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES_DIR
