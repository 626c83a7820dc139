"""Pure-Python (numpy) fallback for the compiled distance kernel.

Accumulates per-feature terms in ascending column order so the resulting
doubles are bit-identical to the compiled kernel's sequential loop.
"""

from __future__ import annotations

import numpy as np


def weighted_l1_distances(
    base: np.ndarray, weights: np.ndarray, query: np.ndarray, out: np.ndarray
) -> np.ndarray:
    """Write ``sum_j weights[j] * |base[i, j] - query[j]|`` into ``out[i]``."""
    n, m = base.shape
    if weights.shape != (m,) or query.shape != (m,) or out.shape != (n,):
        raise ValueError("shape mismatch")
    out[:] = 0.0
    for j in range(m):
        out += weights[j] * np.abs(base[:, j] - query[j])
    return out
