# src/utils/logger.py

import logging
from .config_loader import config


def get_logger(name: str = "workbench"):
    """
    Create a logger with custom StreamHandler and Formatter.
    Uses LOG_LEVEL from config (default INFO). Output goes to stderr so the
    report stream on stdout stays clean.
    """
    logger = logging.getLogger(name)

    # Avoid adding handlers multiple times if logger already exists
    if not logger.handlers:
        log_level = getattr(logging, config.LOG_LEVEL.upper(), logging.INFO)
        logger.setLevel(log_level)

        ch = logging.StreamHandler()
        ch.setLevel(log_level)

        formatter = logging.Formatter(
            "%(asctime)s - %(levelname)s - %(name)s - %(message)s"
        )
        ch.setFormatter(formatter)
        logger.addHandler(ch)
        logger.propagate = False

    return logger


def set_log_level(level: str) -> None:
    """Re-level every workbench logger created so far (used by --log-level)."""
    config.LOG_LEVEL = level.upper()
    numeric = getattr(logging, config.LOG_LEVEL, logging.INFO)
    for name, obj in logging.Logger.manager.loggerDict.items():
        if isinstance(obj, logging.Logger) and name.startswith("src"):
            obj.setLevel(numeric)
            for handler in obj.handlers:
                handler.setLevel(numeric)


logger = get_logger(__name__)
