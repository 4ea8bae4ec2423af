"""Kernel backend selection.

Prefers the compiled Cython loops, falls back to the numpy implementation when
the extension is missing. Set CHS_BACKEND=python (or =cython) to force one; a
forced choice that cannot be honored raises instead of silently degrading.
"""

import os

from . import _kernels_py

_forced = os.environ.get("CHS_BACKEND", "").strip().lower()

if _forced in ("python", "pure"):
    _impl = _kernels_py
    BACKEND = "python"
elif _forced in ("", "cython", "compiled"):
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        if _forced:
            raise
        _impl = _kernels_py
        BACKEND = "python"
else:
    raise ValueError("unrecognized CHS_BACKEND value: %r" % _forced)

h_all = _impl.h_all
elem_all = _impl.elem_all
h_batch = _impl.h_batch
h_grad_batch = _impl.h_grad_batch
