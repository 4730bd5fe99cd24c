import logging
import sys

try:
    from config.settings import LOG_LEVEL, LOG_FORMAT
except ImportError:
    LOG_LEVEL = "WARNING"
    LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
    print("⚠️  Using fallback logging configuration", file=sys.stderr)

_configured = False


def setup_logging(level=None):
    """Route all solver logs to stderr at the configured level."""
    global _configured
    level = (level or LOG_LEVEL).upper()
    root = logging.getLogger()
    if not _configured:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        root.addHandler(handler)
        _configured = True
    root.setLevel(getattr(logging, level, logging.WARNING))
    return root
