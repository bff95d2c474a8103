import logging.config

from . import settings

__all__ = ("settings", "setup")


def setup():
    """Apply the logging configuration from settings."""
    logging.config.dictConfig(settings.LOGGING)
