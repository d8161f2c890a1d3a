"""Logging setup for the command-line front end."""

import logging

from rich.console import Console
from rich.logging import RichHandler

_configured = False


def configure_logging(level: str = "WARNING") -> None:
    """
    Route the nonrep loggers through a rich handler on stderr.

    Calling it again only changes the level.

    Args:
        level: Log level name such as "INFO" or "DEBUG".
    """
    global _configured
    logger = logging.getLogger("nonrep")
    logger.setLevel(level.upper())
    if _configured:
        return

    handler = RichHandler(
        console=Console(stderr=True),
        show_path=False,
        rich_tracebacks=True,
        markup=False,
    )
    handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
    logger.addHandler(handler)
    logger.propagate = False
    _configured = True
