"""
Supergrade - Configuration and Logging Setup
Version 1.0.0
"""

import os
import sys
import logging

TOOL_VERSION = "1.0.0"

# ============================================================================
# LOGGING
# ============================================================================

_LEVELS = {"DEBUG": logging.DEBUG, "INFO": logging.INFO, "WARNING": logging.WARNING, "ERROR": logging.ERROR}
_requested_level = os.getenv("SUPERGRADE_LOG_LEVEL", "INFO").strip().upper()

# Reports own stdout; logs go to stderr.
logging.basicConfig(
    level=_LEVELS.get(_requested_level, logging.INFO),
    stream=sys.stderr,
    format="%(levelname)s %(message)s",
)
logger = logging.getLogger("supergrade")

if _requested_level not in _LEVELS:
    logger.warning(f"SUPERGRADE_LOG_LEVEL={_requested_level!r} is not a level name; using INFO")

# ============================================================================
# ENVIRONMENT VARIABLES
# ============================================================================

DEFAULT_MAX_DIM = 24
DEFAULT_SEED = 20240101


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw)
    except ValueError:
        logger.warning(f"{name}={raw!r} is not an integer; keeping {default}")
        return default


COLOR_MODE = os.getenv("SUPERGRADE_COLOR", "auto").strip().lower()
if COLOR_MODE not in ("auto", "never"):
    logger.warning(f"SUPERGRADE_COLOR={COLOR_MODE!r} is not auto/never; treating as auto")
    COLOR_MODE = "auto"

MAX_DIM = _int_env("SUPERGRADE_MAX_DIM", DEFAULT_MAX_DIM)
SEED = _int_env("SUPERGRADE_SEED", DEFAULT_SEED)

SENTRY_DSN = os.getenv("SENTRY_DSN")
ENVIRONMENT = os.getenv("SUPERGRADE_ENV", "local")

# ============================================================================
# HELPER FUNCTIONS
# ============================================================================

_COLOURS = {"red": "31", "green": "32", "yellow": "33", "bold": "1"}


def use_colour(stream=None) -> bool:
    if COLOR_MODE == "never":
        return False
    stream = stream or sys.stdout
    return hasattr(stream, "isatty") and stream.isatty()


def paint(text: str, colour: str) -> str:
    """Wrap text in an ANSI colour when stdout is a terminal and colour is allowed.

    Examples:
        paint("PASS", "green") -> "\\x1b[32mPASS\\x1b[0m" on a TTY
        paint("PASS", "green") -> "PASS" when piped or SUPERGRADE_COLOR=never
    """
    code = _COLOURS.get(colour)
    if not code or not use_colour():
        return text
    return f"\x1b[{code}m{text}\x1b[0m"
