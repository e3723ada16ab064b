"""Backend selection for the propagation kernel.

The compiled extension is preferred; the pure-Python mirror is used when
the extension is unavailable or when DIRACOMP_PURE_PYTHON is set in the
environment.  Both expose the same ``propagate`` contract.
"""
from __future__ import annotations

import os

from . import _corepy

if os.environ.get("DIRACOMP_PURE_PYTHON"):
    _impl = _corepy
else:
    try:
        from . import _core as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _corepy

BACKEND = "compiled" if _impl.__name__.endswith("_core") else "python"

propagate = _impl.propagate

STATUS_OK = _corepy.STATUS_OK
STATUS_MAX_STEPS = _corepy.STATUS_MAX_STEPS
STATUS_STEP_UNDERFLOW = _corepy.STATUS_STEP_UNDERFLOW


def available_backends() -> dict:
    """Name -> module for every importable backend (used by benchmarks)."""
    out = {"python": _corepy}
    try:
        from . import _core
        out["compiled"] = _core
    except ImportError:
        pass
    return out
