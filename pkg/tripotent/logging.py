import logging
import os

_CONTEXT_FIELDS = ("modulus", "dim", "stage", "elapsed_ms")
_HANDLER_NAME = "tripotent-stream"


class _ContextFilter(logging.Filter):
    """Ensure log records always have modulus, dim, stage, elapsed_ms."""

    def filter(self, record: logging.LogRecord) -> bool:
        for attr in _CONTEXT_FIELDS:
            if not hasattr(record, attr):
                setattr(record, attr, None)
        return True


def get_logger() -> logging.Logger:
    """Configure and return the logger for the tripotent package."""
    log_level = os.getenv("TRIPOTENT_LOG_LEVEL", "WARNING").upper()
    level = getattr(logging, log_level, logging.WARNING)

    logger = logging.getLogger("tripotent")
    if not any(h.get_name() == _HANDLER_NAME for h in logger.handlers):
        handler = logging.StreamHandler()
        handler.set_name(_HANDLER_NAME)
        formatter = logging.Formatter(
            "%(asctime)s %(name)s %(levelname)s %(message)s "
            "modulus=%(modulus)s dim=%(dim)s stage=%(stage)s "
            "elapsed_ms=%(elapsed_ms)s"
        )
        handler.setFormatter(formatter)
        logger.addHandler(handler)
        logger.setLevel(level)
        logger.addFilter(_ContextFilter())
        # Records from child loggers bypass the logger-level filter.
        handler.addFilter(_ContextFilter())
        logger.propagate = False
    return logger


def set_log_level(level: str) -> None:
    """Change the package log level at runtime (used by the CLI)."""
    get_logger().setLevel(getattr(logging, level.upper(), logging.WARNING))


__all__ = ["get_logger", "set_log_level"]
