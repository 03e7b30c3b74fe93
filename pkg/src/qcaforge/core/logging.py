import logging
import logging.config
import sys
from pathlib import Path
from typing import Optional, Union

import yaml

from .errors import ConfigurationError

PACKAGE_LOGGER = "qcaforge"
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"


def _attach(logger: logging.Logger, handler: logging.Handler, level: Union[int, str]) -> None:
    handler.setLevel(level)
    handler.setFormatter(logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT))
    logger.addHandler(handler)


def setup_logger(name: str = PACKAGE_LOGGER, level: Union[int, str, None] = None,
                 log_file: Union[str, Path, None] = None) -> logging.Logger:
    """
    Attach a stderr handler (and optionally a file handler) to `name`.

    stdout is left to reports and CSV output. A logger that already has handlers
    is returned unchanged.
    """
    logger = logging.getLogger(name)
    if logger.handlers:
        return logger

    level = level or logging.INFO
    logger.setLevel(level)
    _attach(logger, logging.StreamHandler(sys.stderr), level)

    if log_file:
        log_path = Path(log_file)
        log_path.parent.mkdir(parents=True, exist_ok=True)
        _attach(logger, logging.FileHandler(log_path), level)
    return logger


def setup_logging(config_path: Union[str, Path], level: Optional[str] = None) -> None:
    """
    Configure logging from a dictConfig YAML file, falling back to setup_logger()
    when the file is missing or unusable. `level` overrides the package logger level.
    """
    try:
        with open(Path(config_path), "r") as f:
            logging.config.dictConfig(yaml.safe_load(f))
    except (OSError, yaml.YAMLError, ValueError, TypeError):
        setup_logger(PACKAGE_LOGGER)

    if level:
        try:
            logging.getLogger(PACKAGE_LOGGER).setLevel(level.upper())
        except ValueError:
            raise ConfigurationError(f"unknown log level '{level}'") from None
