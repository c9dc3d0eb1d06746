# -*- coding: utf-8 -*-
"""Shared defaults and logging setup"""

import logging
import os

DEFAULT_PREC = 60
DEFAULT_MMAX = 1
DEFAULT_BUDGET = 20000
DEFAULT_SEARCH_CAP = 2000

CACHE_ENV_VAR = "TAF_CACHE_DIR"
PACKAGE_LOGGER = "taf_arithmetic"


# ----------------------------------------------------------
def configure_logger(loglevel):
    """Attach a stream handler to the package logger (once)"""
    logger = logging.getLogger(PACKAGE_LOGGER)
    logger.setLevel(loglevel)
    for handler in logger.handlers:
        if getattr(handler, "_taf_handler", False):
            handler.setLevel(loglevel)
            return logger
    formatter = logging.Formatter("%(asctime)s - %(levelname)s - %(message)s")
    sh = logging.StreamHandler()
    sh.setLevel(loglevel)
    sh.setFormatter(formatter)
    sh._taf_handler = True
    logger.addHandler(sh)
    return logger


def default_cache_dir():
    """Cache directory: $TAF_CACHE_DIR or ~/.cache/taf-arithmetic"""
    env = os.environ.get(CACHE_ENV_VAR)
    if env:
        return env
    return os.path.join(os.path.expanduser("~"), ".cache", "taf-arithmetic")
