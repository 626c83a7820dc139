"""Kernel backend selection.

The compiled extension is preferred when importable; otherwise the numpy
fallback is used.  Setting ``LEXACQ_KERNEL=python`` in the environment
forces the fallback (useful for benchmarking).  Both backends produce
bit-identical distances.
"""

from __future__ import annotations

import os

from . import _kernels_py

try:
    from . import _kernels  # type: ignore[attr-defined]
except ImportError:
    _kernels = None

if _kernels is not None and os.environ.get("LEXACQ_KERNEL", "") != "python":
    BACKEND = "compiled"
    weighted_l1_distances = _kernels.weighted_l1_distances
else:
    BACKEND = "python"
    weighted_l1_distances = _kernels_py.weighted_l1_distances


def available_backends() -> dict[str, object]:
    """Name -> distance function for every importable backend."""
    backends: dict[str, object] = {"python": _kernels_py.weighted_l1_distances}
    if _kernels is not None:
        backends["compiled"] = _kernels.weighted_l1_distances
    return backends
