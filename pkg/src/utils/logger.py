"""
Logging for QuantumTruth.

Console output goes to stderr so JSON reports on stdout stay parseable.
Checks may run in worker processes; the file format carries the process name.
"""
import logging
import os
from logging.handlers import RotatingFileHandler

from rich.console import Console
from rich.logging import RichHandler

DEFAULT_LOG_FILE = os.getenv("QT_LOG_FILE", "quantumtruth.log")


def level_from_env(default: str = "INFO") -> int:
    """Resolve QT_LOG_LEVEL to a logging level, falling back to `default`."""
    name = os.getenv("QT_LOG_LEVEL", default).upper()
    return getattr(logging, name, logging.INFO)


def setup_logger(name: str = "QuantumTruth", log_file: str = DEFAULT_LOG_FILE,
                 level: int = logging.INFO) -> logging.Logger:
    """
    Return the QuantumTruth logger: rotating file plus rich console on stderr.

    Args:
        name: Logger name
        log_file: Log file path; empty string disables the file handler
        level: Logging level for both handlers
    """
    log = logging.getLogger(name)
    log.setLevel(level)

    # forked workers inherit the configured logger
    if log.hasHandlers():
        return log

    if log_file:
        file_handler = RotatingFileHandler(
            log_file, maxBytes=5 * 1024 * 1024, backupCount=3, encoding='utf-8'
        )
        file_handler.setLevel(level)
        file_handler.setFormatter(logging.Formatter(
            '%(asctime)s - %(processName)s - %(levelname)s - %(message)s'
        ))
        log.addHandler(file_handler)

    console_handler = RichHandler(console=Console(stderr=True), rich_tracebacks=True,
                                  markup=True, show_path=False)
    console_handler.setLevel(level)
    log.addHandler(console_handler)
    log.propagate = False

    return log


logger = setup_logger(level=level_from_env())
