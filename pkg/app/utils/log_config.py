"""
Logging setup shared by the CLI, the API and the Celery worker.
"""

import logging

from app.config import settings

_configured = False


def configure_logging(level: str = None) -> None:
    """
    Configure the root logger once with the project format.

    Args:
        level: Optional level name overriding settings.LOG_LEVEL
    """
    global _configured
    if _configured:
        if level:
            logging.getLogger().setLevel(level.upper())
        return

    logging.basicConfig(
        level=(level or settings.LOG_LEVEL).upper(),
        format=settings.LOG_FORMAT,
    )
    _configured = True
