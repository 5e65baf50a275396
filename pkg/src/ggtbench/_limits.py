import os

DEFAULT_MAX_ELEMENTS = 10_000


class BoundExceeded(ValueError):
    """A desk-scale enumeration bound was exceeded."""


def max_elements():
    """Closure bound, overridable through ``GGT_MAX_ELEMENTS``."""
    raw = os.environ.get("GGT_MAX_ELEMENTS")
    if raw is None:
        return DEFAULT_MAX_ELEMENTS
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"GGT_MAX_ELEMENTS must be an integer, got {raw!r}")
    if value < 1:
        raise ValueError("GGT_MAX_ELEMENTS must be positive")
    return value
