"""Environment-driven settings, read at call time."""
import logging
import os

logger = logging.getLogger(__name__)

DEFAULT_PRECISION_BITS = 256
MIN_PRECISION_BITS = 53
DEFAULT_OUTPUT_DIR = "reports"


def get_precision_bits() -> int:
    """Default BigFloat precision, overridable with ARCTANPOW_PRECISION."""
    raw = os.getenv("ARCTANPOW_PRECISION")
    if not raw:
        return DEFAULT_PRECISION_BITS
    try:
        bits = int(raw)
    except ValueError:
        logger.warning(f"Ignoring non-integer ARCTANPOW_PRECISION={raw!r}")
        return DEFAULT_PRECISION_BITS
    if bits < MIN_PRECISION_BITS:
        logger.warning(f"Ignoring ARCTANPOW_PRECISION={bits} (minimum is {MIN_PRECISION_BITS})")
        return DEFAULT_PRECISION_BITS
    return bits


def get_output_dir() -> str:
    """Directory used by the export command when no path is given."""
    return os.getenv("ARCTANPOW_OUTPUT_DIR", DEFAULT_OUTPUT_DIR)
