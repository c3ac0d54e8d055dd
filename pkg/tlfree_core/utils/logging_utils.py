"""
Logging utilities for tlfree.
"""
import logging
import sys
from pathlib import Path
from typing import IO, Optional, Union


def setup_logging(
    level: Union[int, str] = logging.INFO,
    log_file: Optional[Path] = None,
    format_string: Optional[str] = None,
    stream: Optional[IO] = None,
) -> None:
    """
    Setup logging configuration for tlfree.

    Args:
        level: Logging level or its name (default: INFO)
        log_file: Optional path to log file
        format_string: Optional custom format string
        stream: Console stream (default: stdout)
    """
    if isinstance(level, str):
        level = getattr(logging, level.upper(), logging.INFO)
    if format_string is None:
        format_string = '[%(asctime)s] %(levelname)s [%(name)s] %(message)s'

    handlers = [logging.StreamHandler(stream or sys.stdout)]

    if log_file:
        log_file.parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(str(log_file)))

    logging.basicConfig(
        level=level,
        format=format_string,
        handlers=handlers,
        force=True,
    )

    # Suppress some noisy loggers
    logging.getLogger('sympy').setLevel(logging.WARNING)


def get_logger(name: str) -> logging.Logger:
    """Get a logger instance with the given name."""
    return logging.getLogger(name)
