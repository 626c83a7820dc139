# cython: boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled distance kernel for instance-based classification.

Must stay numerically identical to ``_kernels_py``: terms are accumulated
in ascending column order, in double precision, with FMA contraction
disabled at compile time.
"""

from libc.math cimport fabs


def weighted_l1_distances(
    double[:, ::1] base,
    double[::1] weights,
    double[::1] query,
    double[::1] out,
):
    """Write sum_j weights[j] * |base[i, j] - query[j]| into out[i]."""
    cdef Py_ssize_t n = base.shape[0]
    cdef Py_ssize_t m = base.shape[1]
    cdef Py_ssize_t i, j
    cdef double acc
    if weights.shape[0] != m or query.shape[0] != m or out.shape[0] != n:
        raise ValueError("shape mismatch")
    for i in range(n):
        acc = 0.0
        for j in range(m):
            acc += weights[j] * fabs(base[i, j] - query[j])
        out[i] = acc
    return out
