import logging
import sys

from src import config

_ROOT = "sgsize"
_configured = False


class _TagFormatter(logging.Formatter):
    """Formats records as "[TAG] message", TAG being the last part of the logger name."""

    def format(self, record: logging.LogRecord) -> str:
        tag = record.name.rsplit(".", 1)[-1]
        return f"[{tag}] {record.getMessage()}"


def setup_logging(level: str | int | None = None) -> None:
    """
    Route toolkit loggers to stderr; stdout is reserved for JSON output.
    """
    global _configured
    root = logging.getLogger(_ROOT)
    if not _configured:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(_TagFormatter())
        root.addHandler(handler)
        root.propagate = False
        _configured = True
    root.setLevel(level if level is not None else config.LOG_LEVEL)


def get_logger(tag: str) -> logging.Logger:
    return logging.getLogger(f"{_ROOT}.{tag}")
