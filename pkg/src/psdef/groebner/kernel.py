"""Kernel selection: compiled F2 reduction core with pure-Python fallback.

The compiled extension (``psdef._f2speed``, Cython) packs monomials into
64-bit words and is used automatically when importable and when the
truncation degree fits its limits.  Setting ``PSDEF_PURE_PYTHON=1`` forces
the fallback, which is used by the kernel-parity tests and the benchmark.
"""

from __future__ import annotations

import os

from . import f2core

try:
    from .. import _f2speed  # type: ignore[attr-defined]
except ImportError:  # pragma: no cover - depends on build environment
    _f2speed = None

# the compiled kernel packs (degree, <=7 variable bytes) into one uint64
COMPILED_MAX_TRUNCATION = 8


def compiled_available() -> bool:
    return _f2speed is not None and os.environ.get("PSDEF_PURE_PYTHON", "") != "1"


def kernel_name(pure: bool | None = None, truncation: int = 0) -> str:
    if pure is None:
        pure = not compiled_available()
    if not pure and truncation == 0:
        # untruncated runs may exceed the packed degree budget
        pure = True
    if not pure and truncation > COMPILED_MAX_TRUNCATION:
        pure = True
    return "python" if pure else "compiled"


def make_store(truncation: int = 0, pure: bool | None = None):
    """Build an F2 basis store; ``truncation=0`` means untruncated."""
    if kernel_name(pure, truncation) == "compiled":
        return _f2speed.F2Store(truncation)
    return f2core.F2Store(truncation)
