import logging
import os
import sys

from config import LOG_DIR, LOG_FILE, LOG_LEVEL


def setup_logger(name=__name__, log_level=None):
    """
    Sets up a logger with the specified name and log level.
    Console output goes to stderr so stdout stays clean for JSON/TSV reports.
    """
    if log_level is None:
        log_level = getattr(logging, LOG_LEVEL, logging.WARNING)

    logger = logging.getLogger(name)
    logger.setLevel(log_level)

    # Prevent adding multiple handlers to the same logger
    if not logger.handlers:
        c_handler = logging.StreamHandler(sys.stderr)
        c_handler.setLevel(log_level)

        log_dir = os.path.join(os.getcwd(), LOG_DIR)
        os.makedirs(log_dir, exist_ok=True)
        f_handler = logging.FileHandler(os.path.join(log_dir, LOG_FILE), encoding='utf-8')
        f_handler.setLevel(log_level)

        c_format = logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s')
        c_handler.setFormatter(c_format)
        f_handler.setFormatter(c_format)

        logger.addHandler(c_handler)
        logger.addHandler(f_handler)
        logger.propagate = False

    return logger
