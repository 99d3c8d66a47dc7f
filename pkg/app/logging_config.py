"""
Logging Configuration Module

Sets up structured logging for the command line and the oracle using
structlog. Log output goes to stderr so that stdout carries only results
that scripts consume.
"""

import logging
import structlog
import sys
from typing import Optional


def setup_logging(log_level: str = "WARNING", log_file: Optional[str] = None):
    """
    Set up structured logging for the application.

    Calling it again replaces the previous configuration.

    Args:
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_file: Optional file path to write logs to (JSON lines)
    """
    # Configure standard library logging
    logging.basicConfig(
        format="%(message)s",
        stream=sys.stderr,
        level=getattr(logging, log_level.upper()),
        force=True,
    )

    # Configure structlog
    structlog.configure(
        processors=[
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_logger_name,
            structlog.stdlib.add_log_level,
            structlog.stdlib.PositionalArgumentsFormatter(),
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            structlog.processors.UnicodeDecoder(),
            structlog.processors.JSONRenderer() if log_file else structlog.dev.ConsoleRenderer(colors=False),
        ],
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=True,
    )

    # If a log file is specified, also configure file logging
    if log_file:
        file_handler = logging.FileHandler(log_file)
        file_handler.setFormatter(logging.Formatter("%(message)s"))
        logging.getLogger().addHandler(file_handler)


def get_logger(name: Optional[str] = None):
    """
    Get a logger instance with optional name.

    Args:
        name: Optional component name, bound as logger_name

    Returns:
        Configured logger instance
    """
    if name:
        return structlog.get_logger().bind(logger_name=name)
    return structlog.get_logger()
