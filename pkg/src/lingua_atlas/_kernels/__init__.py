"""Kernel backend selection.

The hot loops (skip-gram SGD, layout SGD) exist twice: a Cython extension
(`_native`) and a pure-Python mirror (`pure`). Both consume the same
splitmix64 streams and perform identical float64 arithmetic, so a given seed
produces the same bits either way; the extension is just much faster.

Set LINGUA_ATLAS_BACKEND=native|pure to force one; default is native when the
extension importable, else pure.
"""

from __future__ import annotations

import os

_requested = os.environ.get("LINGUA_ATLAS_BACKEND", "auto").strip().lower() or "auto"

if _requested == "pure":
    from . import pure as _impl

    BACKEND = "pure"
elif _requested == "native":
    from . import _native as _impl  # raises ImportError if not built

    BACKEND = "native"
elif _requested == "auto":
    try:
        from . import _native as _impl

        BACKEND = "native"
    except ImportError:
        from . import pure as _impl

        BACKEND = "pure"
else:
    raise ImportError(
        f"LINGUA_ATLAS_BACKEND must be 'native', 'pure' or 'auto', got {_requested!r}"
    )

train_skipgram = _impl.train_skipgram
optimize_layout = _impl.optimize_layout


def backend_name() -> str:
    return BACKEND
