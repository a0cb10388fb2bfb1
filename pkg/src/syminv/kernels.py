"""Backend selection for the trace kernels.

The compiled extension is used when it imports; otherwise, or when the
environment variable ``SYMINV_PURE_PYTHON`` is set to a non-empty value, the
pure-Python implementation is used. Both expose the same two functions.
"""

from __future__ import annotations

import os

from . import _kernels_py as python_backend

try:
    from . import _kernels as compiled_backend
except ImportError:  # extension not built
    compiled_backend = None

if compiled_backend is not None and not os.environ.get("SYMINV_PURE_PYTHON"):
    BACKEND = "compiled"
    _impl = compiled_backend
else:
    BACKEND = "python"
    _impl = python_backend

trace_words_exact = _impl.trace_words_exact
trace_words_float = _impl.trace_words_float


def worker_count() -> int:
    """Worker threads for word evaluation, from ``SYMINV_THREADS`` (0 = auto)."""
    raw = os.environ.get("SYMINV_THREADS", "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n <= 0:
        n = os.cpu_count() or 1
    return n
