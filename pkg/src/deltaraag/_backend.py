"""Kernel selection: compiled ``_core`` if importable, else ``_pycore``.

Set ``DELTARAAG_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pycore

if os.environ.get("DELTARAAG_PURE_PYTHON"):
    kernels = _pycore
else:
    try:
        from . import _core as kernels  # type: ignore[attr-defined]
    except ImportError:
        kernels = _pycore

NAME: str = kernels.NAME
rref = kernels.rref
rank = kernels.rank
umul = kernels.umul
canon_search = kernels.canon_search

__all__ = ["NAME", "rref", "rank", "umul", "canon_search", "kernels"]
