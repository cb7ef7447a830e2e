import logging
import os

from ideal_duality.config import Config


def setup_logger(run_name, log_level=None):
    """
    Set up the run logger: console output on stderr and, when a log folder
    is configured, a new log file for each run.
    """
    level = log_level or Config.LOG_LEVEL
    if isinstance(level, str):
        level = getattr(logging, level.upper(), logging.WARNING)

    safe_name = os.path.basename(run_name).replace(":", "_").replace(".", "_")
    logger = logging.getLogger("ideal_duality")
    logger.setLevel(level)

    formatter = logging.Formatter('[%(asctime)s] %(name)s - %(levelname)s - %(message)s')

    # stdout carries the JSON report, so the console handler writes to stderr
    if not any(type(handler) is logging.StreamHandler for handler in logger.handlers):
        console_handler = logging.StreamHandler()
        console_handler.setFormatter(formatter)
        logger.addHandler(console_handler)

    log_filename = Config.get_log_file_path(safe_name)
    if log_filename and not any(isinstance(handler, logging.FileHandler) for handler in logger.handlers):
        file_handler = logging.FileHandler(log_filename)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    for handler in logger.handlers:
        handler.setLevel(level)

    logger.propagate = False  # Prevent duplicate log entries

    return logger
