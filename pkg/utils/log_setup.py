"""
Logging Setup - One stderr handler for the whole process
"""

import logging
import sys

from config import LOG_LEVEL

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def configure_logging(verbosity=0, stream=None):
    """
    Route log records to stderr

    Args:
        verbosity (int): 0 keeps the configured level, 1 means INFO, 2+ DEBUG
    """
    if verbosity >= 2:
        level = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = logging.getLevelName(LOG_LEVEL)
        if not isinstance(level, int):
            level = logging.WARNING

    root = logging.getLogger()
    for handler in list(root.handlers):
        if getattr(handler, "_cliquetfidf", False):
            root.removeHandler(handler)
    handler = logging.StreamHandler(stream or sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    handler._cliquetfidf = True
    root.addHandler(handler)
    root.setLevel(level)
    return level
