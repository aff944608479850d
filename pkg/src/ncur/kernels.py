"""Kernel selection: the compiled extension when built, else the pure-Python fallback.

Set ``NCUR_PURE_PYTHON=1`` to force the fallback.
"""
from __future__ import annotations

import os
from fractions import Fraction

from . import _fallback

BACKEND = "python"
if os.environ.get("NCUR_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _impl
        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _fallback
else:
    _impl = _fallback


def grid_oracle(n: int = 40, backend: str | None = None) -> dict:
    """Maximize <X> + <Z> over the 1/n grid of the four-preparation parameters."""
    if n < 1:
        raise ValueError("grid size must be positive")
    impl = {"python": _fallback, None: _impl}.get(backend)
    if impl is None:
        if backend != "cython":
            raise ValueError(f"unknown backend {backend!r}")
        from . import _kernels as impl
    best, count, arg = impl.grid_oracle(n)
    names = ("a", "b", "c", "d", "eps", "gam", "dlt")
    return {
        "n": n,
        "max": Fraction(best, n),
        "count": count,
        "argmax": {k: Fraction(v, n) for k, v in zip(names, arg)},
    }
