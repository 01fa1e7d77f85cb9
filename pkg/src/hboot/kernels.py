"""Kernel dispatch: the compiled extension when importable, else pure Python.

Set ``HBOOT_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os
from types import ModuleType

from hboot import _pykernels

_compiled: ModuleType | None = None
if os.environ.get("HBOOT_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from hboot import _ckernels as _compiled
    except ImportError:  # extension not built
        _compiled = None

_impl: ModuleType = _compiled if _compiled is not None else _pykernels
BACKEND = "compiled" if _compiled is not None else "python"


def available_backends() -> list[str]:
    names = ["python"]
    try:
        from hboot import _ckernels  # noqa: F401
    except ImportError:
        return names
    return ["compiled", "python"]


def backend(name: str | None = None) -> ModuleType:
    """Return the kernel module called ``name`` (default: the active one)."""
    if name is None:
        return _impl
    if name == "python":
        return _pykernels
    if name == "compiled":
        from hboot import _ckernels

        return _ckernels
    raise ValueError(f"unknown kernel backend {name!r}")


def closing_pairs_path(bits, L: int):
    return _impl.closing_pairs_path(bits, L)


def path_exists(bits, u: int, v: int, L: int, avoid=None) -> bool:
    return _impl.path_exists(bits, u, v, L, avoid)


def scan_codes(n: int, L: int, start: int, stop: int, connected_only: bool, limit: int):
    return _impl.scan_codes(n, L, start, stop, connected_only, limit)
