"""Kernel backend selection.

The compiled extension is preferred when present; the pure-Python twin is the
fallback.  `INDUCEDC4_BACKEND=python|compiled` pins the choice at import, and
`select_backend` switches it at runtime (the CLI's --backend flag).
"""

from __future__ import annotations

import os

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

_FORCED = os.environ.get("INDUCEDC4_BACKEND", "auto")

_ENTRY_POINTS = (
    "oracle_scan",
    "nonclique_pair",
    "threshold_scan",
    "incomparable_edge_scan",
    "diagonal_scan",
    "step3_scan",
)


class _Dispatch:
    def __init__(self):
        self.backend = ""
        self._bind("auto" if _FORCED == "auto" else _FORCED)

    def _bind(self, name: str) -> None:
        if name == "auto":
            module = _compiled if _compiled is not None else _kernels_py
        elif name == "compiled":
            if _compiled is None:
                raise RuntimeError("compiled kernels are not available")
            module = _compiled
        elif name == "python":
            module = _kernels_py
        else:
            raise ValueError(f"unknown backend {name!r}")
        for fn in _ENTRY_POINTS:
            setattr(self, fn, getattr(module, fn))
        self.backend = module.BACKEND


_dispatch = _Dispatch()


def select_backend(name: str) -> str:
    """Switch kernel backend ('auto', 'compiled' or 'python'); returns the
    backend actually in effect."""
    _dispatch._bind(name)
    return _dispatch.backend


def current_backend() -> str:
    return _dispatch.backend


def compiled_available() -> bool:
    return _compiled is not None


def __getattr__(name):
    if name in _ENTRY_POINTS:
        return getattr(_dispatch, name)
    raise AttributeError(name)
