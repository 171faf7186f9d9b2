"""Numba availability switch.

Set ``RSVERIFY_DISABLE_NUMBA=1`` to force the pure-numpy kernels even when
numba is importable. The flag is read once, at import time.
"""
from __future__ import annotations

import os

_FALSY = {"", "0", "false", "no", "off"}


def _env_disabled() -> bool:
    return os.environ.get("RSVERIFY_DISABLE_NUMBA", "").strip().lower() not in _FALSY


try:
    import numba as _numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    _numba = None

NUMBA_AVAILABLE = _numba is not None
USE_NUMBA = NUMBA_AVAILABLE and not _env_disabled()


def njit(*args, **kwargs):
    """``numba.njit`` when available, otherwise an identity decorator.

    Kernels decorated here are only dispatched to when ``USE_NUMBA`` is set;
    the identity fallback just keeps the module importable.
    """
    if NUMBA_AVAILABLE:
        return _numba.njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return lambda f: f


def backend_name() -> str:
    return "numba" if USE_NUMBA else "numpy"
