"""Kernel selection: compiled extension if available, pure Python otherwise.

Set LATGEN_PUREPY=1 to force the pure-Python kernel (used by the
backend-parity tests and the benchmark).
"""

from __future__ import annotations

import os

from . import _kernel_py

_impl = None


def get_impl():
    global _impl
    if _impl is None:
        if os.environ.get("LATGEN_PUREPY"):
            _impl = _kernel_py
        else:
            try:
                from . import _kernel

                _impl = _kernel
            except ImportError:
                _impl = _kernel_py
    return _impl


def set_impl(name):
    """Explicitly select 'compiled' or 'pure' (for benchmarks and tests)."""
    global _impl
    if name == "pure":
        _impl = _kernel_py
    elif name == "compiled":
        from . import _kernel

        _impl = _kernel
    else:
        raise ValueError(f"unknown backend {name!r}")
    return _impl


def is_compiled():
    return getattr(get_impl(), "IS_COMPILED", False)
