# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled scans over finite operation tables.

Tables are flattened row-major over the argument carriers; every array holds
carrier positions or class ids as int64.  Signatures and semantics match
``_kernels_py`` exactly.
"""
import numpy as np
cimport numpy as cnp

ctypedef cnp.int64_t i64


def respects(const i64[:] table, const i64[:] dims, const i64[:] arg_cls,
             const i64[:] offsets, const i64[:] ncls, const i64[:] res_cls):
    cdef Py_ssize_t arity = dims.shape[0]
    cdef Py_ssize_t n = table.shape[0]
    cdef Py_ssize_t idx, k, rem, key, keyspace = 1
    cdef i64 d
    for k in range(arity):
        keyspace *= ncls[k]
    seen_arr = np.full(max(keyspace, 1), -1, dtype=np.int64)
    cdef i64[:] seen = seen_arr
    for idx in range(n):
        rem = idx
        key = 0
        for k in range(arity - 1, -1, -1):
            d = rem % dims[k]
            rem = rem // dims[k]
            key = key * ncls[k] + arg_cls[offsets[k] + d]
        if seen[key] < 0:
            seen[key] = idx
        elif res_cls[table[seen[key]]] != res_cls[table[idx]]:
            return int(seen[key]), int(idx)
    return -1, -1


def hom_violation(const i64[:] table_a, const i64[:] dims_a, const i64[:] table_b,
                  const i64[:] dims_b, const i64[:] fcat, const i64[:] foffsets,
                  const i64[:] fres, const i64[:] cls_b):
    cdef Py_ssize_t arity = dims_a.shape[0]
    cdef Py_ssize_t n = table_a.shape[0]
    cdef Py_ssize_t idx, k, rem, idx_b, stride
    cdef i64 d
    for idx in range(n):
        rem = idx
        idx_b = 0
        stride = 1
        for k in range(arity - 1, -1, -1):
            d = rem % dims_a[k]
            rem = rem // dims_a[k]
            idx_b += fcat[foffsets[k] + d] * stride
            stride *= dims_b[k]
        if cls_b[fres[table_a[idx]]] != cls_b[table_b[idx_b]]:
            return int(idx)
    return -1
