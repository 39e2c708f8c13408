# app/logging_config.py
import logging
from typing import Optional

from app.config import settings

# modules whose node-by-node searches log at DEBUG
SEARCH_LOGGERS = ['app.core.cuts', 'app.core.regions', 'app.core.search', 'app.core.spans', 'app.core.arcs']


def _level(name: Optional[str], default: int) -> int:
    if not name:
        return default
    return getattr(logging, name.upper(), default)


def configure_logging(level: Optional[str] = None):
    """Root format, app level and the quieter search loggers; ``level`` overrides LOG_LEVEL."""
    log_level = _level(level or settings.LOG_LEVEL, logging.INFO)

    logging.basicConfig(
        level=log_level,
        format=settings.LOG_FORMAT
    )

    for logger_name in ['httpcore', 'httpx', 'uvicorn.access', 'hypothesis']:
        logging.getLogger(logger_name).setLevel(logging.WARNING)

    logging.getLogger('app').setLevel(log_level)

    # searches stay at SEARCH_LOG_LEVEL unless the app level is stricter
    search_level = max(_level(settings.SEARCH_LOG_LEVEL, logging.INFO), log_level)
    for logger_name in SEARCH_LOGGERS:
        logging.getLogger(logger_name).setLevel(search_level)
