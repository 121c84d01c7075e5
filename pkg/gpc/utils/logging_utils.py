"""
Logging setup shared by the library and the command line.
"""

import logging
import os
from typing import Optional

from ..config.solver_config import LOG_FILE_ENV_VAR, LOG_LEVEL_ENV_VAR

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def setup_logging(level: Optional[str] = None) -> logging.Logger:
    """
    Configure the ``gpc`` logger.

    Args:
        level: Logging level name; falls back to GPC_LOG_LEVEL, then WARNING

    Returns:
        The configured package logger
    """
    logger = logging.getLogger('gpc')
    level = level or os.getenv(LOG_LEVEL_ENV_VAR, 'WARNING')
    logger.setLevel(level.upper())

    # Create handlers if they don't exist
    if not logger.handlers:
        # Console handler (stderr keeps stdout machine-readable)
        console_handler = logging.StreamHandler()
        console_handler.setFormatter(logging.Formatter(LOG_FORMAT))
        logger.addHandler(console_handler)

        # File handler
        log_file = os.getenv(LOG_FILE_ENV_VAR)
        if log_file:
            file_handler = logging.FileHandler(log_file)
            file_handler.setFormatter(logging.Formatter(LOG_FORMAT))
            logger.addHandler(file_handler)

    return logger
