import logging
import sys
from logging.handlers import RotatingFileHandler

from utils.constants import LOGS_DIR, LOG_FILE_NAME

_UNITS = {"KB": 1024, "MB": 1024 * 1024}
_DEFAULT_ROTATION = 5 * 1024 * 1024


def _parse_size(text) -> int:
    """"5MB" -> 5*1024*1024; unparseable values fall back to 5MB."""
    raw = str(text).upper().strip()
    for unit, factor in _UNITS.items():
        if raw.endswith(unit):
            try:
                return int(raw[:-len(unit)]) * factor
            except ValueError:
                return _DEFAULT_ROTATION
    return _DEFAULT_ROTATION


class Logger:
    """Enhanced logger with stderr and rotating file output."""

    _configured = False

    @classmethod
    def setup(cls, settings: dict):
        """
        Global configuration for all Logger instances.

        Args:
            settings: Dictionary containing 'level', 'file_logging', 'rotation', 'backup_count'
        """
        if cls._configured:
            return

        level_name = str(settings.get('level', 'WARNING')).upper()
        root = logging.getLogger()
        root.setLevel(getattr(logging, level_name, logging.WARNING))

        if not root.handlers:
            formatter = logging.Formatter(
                '[%(asctime)s] [%(levelname)s] [%(name)s] %(message)s',
                datefmt='%Y-%m-%d %H:%M:%S'
            )

            # stdout carries the reports
            console_handler = logging.StreamHandler(sys.stderr)
            console_handler.setFormatter(formatter)
            root.addHandler(console_handler)

            if settings.get('file_logging', False):
                try:
                    LOGS_DIR.mkdir(exist_ok=True)
                    file_handler = RotatingFileHandler(
                        LOGS_DIR / LOG_FILE_NAME,
                        maxBytes=_parse_size(settings.get('rotation', '5MB')),
                        backupCount=settings.get('backup_count', 5)
                    )
                    file_handler.setFormatter(formatter)
                    root.addHandler(file_handler)
                except OSError as e:
                    print(f"Failed to initialize file logger: {e}", file=sys.stderr)

        cls._configured = True

    def __init__(self, name: str = "quiverhn"):
        self.logger = logging.getLogger(name)

    def info(self, message: str):
        self.logger.info(message)

    def warning(self, message: str):
        self.logger.warning(message)

    def error(self, message: str):
        self.logger.error(message)

    def debug(self, message: str):
        self.logger.debug(message)

    def critical(self, message: str):
        self.logger.critical(message)
