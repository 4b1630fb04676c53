import logging
import logging.handlers
import os
import sys

LOGGER_NAME = "drinfeld_ext"
LOG_DIR_ENV = "DRINFELD_EXT_LOG_DIR"
FORMAT = "%(asctime)s - %(levelname)s - %(message)s"


def get_logger(name=None, log_dir=None):
    """Return the package logger, or one of its children.

    Handlers live on the package logger only and are attached once. Nothing is
    ever written to stdout, command output stays reproducible.
    """
    logger = logging.getLogger(LOGGER_NAME)
    formatter = logging.Formatter(FORMAT)
    logger.propagate = False

    if log_dir is None:
        log_dir = os.environ.get(LOG_DIR_ENV)

    # only add handlers if not added before
    if not len(logger.handlers):
        logger.setLevel(logging.DEBUG)
        console = logging.StreamHandler(sys.stderr)
        console.setLevel(logging.WARNING)
        console.setFormatter(formatter)
        logger.addHandler(console)

        if log_dir:
            debug_file = logging.handlers.RotatingFileHandler(
                os.path.join(log_dir, "drinfeld_ext_debug.log"),
                maxBytes=10000000,
                backupCount=9,
            )
            debug_file.setLevel(logging.DEBUG)
            debug_file.setFormatter(formatter)
            logger.addHandler(debug_file)

            info_file = logging.handlers.RotatingFileHandler(
                os.path.join(log_dir, "drinfeld_ext.log"),
                maxBytes=10000000,
                backupCount=9,
            )
            info_file.setLevel(logging.INFO)
            info_file.setFormatter(formatter)
            logger.addHandler(info_file)

    if name:
        if name.startswith(LOGGER_NAME + "."):
            name = name[len(LOGGER_NAME) + 1:]
        return logger.getChild(name)
    return logger


def set_console_level(verbosity):
    """0 -> WARNING, 1 -> INFO, 2 or more -> DEBUG."""
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbosity, logging.DEBUG)
    logger = get_logger()
    for handler in logger.handlers:
        if type(handler) is logging.StreamHandler:
            handler.setLevel(level)
    return level
