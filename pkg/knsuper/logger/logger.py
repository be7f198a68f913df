import logging
import os
from typing import Set, Union

from knsuper.config.settings import get_settings

_configured: Set[str] = set()


def log_path(stem: str) -> str:
    """Path of the log file for ``stem`` inside the configured log directory."""
    return os.path.join(get_settings().log_dir, f"{stem}.log")


def _resolve_level(level: Union[int, str, None]) -> int:
    if level is None:
        level = get_settings().log_level
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
    return level if isinstance(level, int) else logging.INFO


def setup_logger(name: str, log_file: str, level=None) -> logging.Logger:
    directory = os.path.dirname(log_file)
    if directory:
        os.makedirs(directory, exist_ok=True)

    formatter = logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s')

    handler = logging.FileHandler(log_file, mode='a', encoding='utf-8', delay=True)
    handler.setFormatter(formatter)

    logger = logging.getLogger(name)
    logger.setLevel(_resolve_level(level))

    # Prevent adding multiple handlers if logger already exists
    if not logger.hasHandlers():
        logger.addHandler(handler)

    _configured.add(name)
    return logger


def set_level(level: Union[int, str]) -> None:
    """Apply ``level`` to every logger created through setup_logger."""
    resolved = _resolve_level(level)
    for name in _configured:
        logging.getLogger(name).setLevel(resolved)
