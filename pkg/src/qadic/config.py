"""Runtime knobs, all overridable via environment variables.

QADIC_SCAN_BUDGET     largest modulus p**n the brute-force oracle will sweep
                      (default 3**9 = 19683).
QADIC_PRECISION_CAP   largest *requested* output precision, in digits
                      (default 64).  Internal scratch may legitimately exceed
                      the cap by a bounded factor (e.g. the exceptional-q
                      solver works at roughly twice its requested digit
                      count); the cap bounds what callers may ask for.
QADIC_BACKEND         set to "pure" to force the pure-Python scan kernels even
                      when the compiled extension is importable.
"""

from __future__ import annotations

import os

from .errors import ResourceError

DEFAULT_SCAN_BUDGET = 3**9
DEFAULT_PRECISION_CAP = 64


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError:
        return default
    return value if value > 0 else default


def scan_budget() -> int:
    return _env_int("QADIC_SCAN_BUDGET", DEFAULT_SCAN_BUDGET)


def precision_cap() -> int:
    return _env_int("QADIC_PRECISION_CAP", DEFAULT_PRECISION_CAP)


def check_precision_request(n: int) -> int:
    """Validate a requested output precision against the configured cap."""
    cap = precision_cap()
    if n > cap:
        raise ResourceError(f"requested precision {n} exceeds cap {cap} (QADIC_PRECISION_CAP)")
    return n


def check_scan_size(size: int) -> int:
    """Validate a brute-force sweep size against the configured budget."""
    budget = scan_budget()
    if size > budget:
        raise ResourceError(f"scan of size {size} exceeds budget {budget} (QADIC_SCAN_BUDGET)")
    return size
