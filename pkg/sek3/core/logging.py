import logging
import sys

from sek3.core.config import settings

_FORMAT = "[%(name)s] %(levelname)s: %(message)s"


def configure_logging(level: str | None = None) -> None:
    """Install one stderr handler on the ``sek3`` logger.

    Only the CLI calls this; library code just logs through module loggers.
    """
    root = logging.getLogger("sek3")
    root.setLevel((level or settings.LOG_LEVEL).upper())
    for handler in list(root.handlers):
        if getattr(handler, "_sek3", False):
            root.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(_FORMAT))
    handler._sek3 = True
    root.addHandler(handler)
    root.propagate = False
