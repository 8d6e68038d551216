# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled counting kernels: int64 Fenwick DP and merge inversion counts.

These are the hot inner loops of the Monte-Carlo paths. Values must be
positive integers and the caller guarantees the final count fits in int64
(the Python fallback handles everything else).
"""
from libc.stdlib cimport free, malloc
from libc.string cimport memset

import numpy as np


cdef inline void fen_add(long long* tree, int size, int i, long long val) nogil:
    while i <= size:
        tree[i] += val
        i += i & (-i)


cdef inline long long fen_prefix(long long* tree, int i) nogil:
    cdef long long s = 0
    while i > 0:
        s += tree[i]
        i -= i & (-i)
    return s


cdef long long _inv_merge(long long* a, long long* buf, Py_ssize_t n) nogil:
    cdef long long total = 0
    cdef Py_ssize_t width = 1, lo, mid, hi, i, j, k
    while width < n:
        lo = 0
        while lo < n:
            mid = lo + width
            if mid > n:
                mid = n
            hi = lo + 2 * width
            if hi > n:
                hi = n
            i = lo; j = mid; k = lo
            while i < mid and j < hi:
                if a[i] <= a[j]:
                    buf[k] = a[i]; i += 1
                else:
                    buf[k] = a[j]; total += mid - i; j += 1
                k += 1
            while i < mid:
                buf[k] = a[i]; i += 1; k += 1
            while j < hi:
                buf[k] = a[j]; j += 1; k += 1
            for i in range(lo, hi):
                a[i] = buf[i]
            lo += 2 * width
        width *= 2
    return total


cdef long long _inc_count(const long long* x, Py_ssize_t n, int k, bint strict,
                          int vmax, long long* trees) nogil:
    # trees: (k+1) Fenwick trees of size vmax+1 each, pre-zeroed by caller
    cdef Py_ssize_t pos
    cdef int r, upto, j, jmax
    cdef long long cnt
    cdef long long* row
    for pos in range(n):
        r = <int> x[pos]
        upto = r - 1 if strict else r
        jmax = k if k < pos + 1 else <int> (pos + 1)
        j = jmax
        while j >= 2:
            cnt = fen_prefix(trees + (j - 1) * (vmax + 1), upto)
            if cnt != 0:
                fen_add(trees + j * (vmax + 1), vmax, r, cnt)
            j -= 1
        fen_add(trees + (vmax + 1), vmax, r, 1)
    return fen_prefix(trees + k * (vmax + 1), vmax)


cdef long long _inc_total(const long long* x, Py_ssize_t n, bint strict,
                          int vmax, long long* tree) nogil:
    cdef Py_ssize_t pos
    cdef int r, upto
    for pos in range(n):
        r = <int> x[pos]
        upto = r - 1 if strict else r
        fen_add(tree, vmax, r, 1 + fen_prefix(tree, upto))
    return 1 + fen_prefix(tree, vmax)


def inv_count(long long[::1] seq):
    cdef Py_ssize_t n = seq.shape[0]
    cdef long long* a = <long long*> malloc(2 * n * sizeof(long long))
    if a == NULL:
        raise MemoryError
    cdef Py_ssize_t i
    cdef long long res
    try:
        for i in range(n):
            a[i] = seq[i]
        with nogil:
            res = _inv_merge(a, a + n, n)
    finally:
        free(a)
    return res


def inc_count(long long[::1] seq, int k, bint strict):
    cdef Py_ssize_t n = seq.shape[0]
    if k == 0:
        return 1
    if k > n:
        return 0
    cdef int vmax = 0
    cdef Py_ssize_t i
    for i in range(n):
        if seq[i] <= 0:
            raise ValueError("values must be positive")
        if seq[i] > vmax:
            vmax = <int> seq[i]
    cdef size_t cells = (k + 1) * (vmax + 1)
    cdef long long* trees = <long long*> malloc(cells * sizeof(long long))
    if trees == NULL:
        raise MemoryError
    cdef long long res
    try:
        memset(trees, 0, cells * sizeof(long long))
        with nogil:
            res = _inc_count(&seq[0], n, k, strict, vmax, trees)
    finally:
        free(trees)
    return res


def inc_total(long long[::1] seq, bint strict):
    cdef Py_ssize_t n = seq.shape[0]
    if n == 0:
        return 1
    cdef int vmax = 0
    cdef Py_ssize_t i
    for i in range(n):
        if seq[i] <= 0:
            raise ValueError("values must be positive")
        if seq[i] > vmax:
            vmax = <int> seq[i]
    cdef long long* tree = <long long*> malloc((vmax + 1) * sizeof(long long))
    if tree == NULL:
        raise MemoryError
    cdef long long res
    try:
        memset(tree, 0, (vmax + 1) * sizeof(long long))
        with nogil:
            res = _inc_total(&seq[0], n, strict, vmax, tree)
    finally:
        free(tree)
    return res


def batch_inv_count(long long[:, ::1] w):
    cdef Py_ssize_t m = w.shape[0], n = w.shape[1], r, i
    out_arr = np.empty(m, dtype=np.int64)
    cdef long long[::1] out = out_arr
    cdef long long* a = <long long*> malloc(2 * n * sizeof(long long))
    if a == NULL:
        raise MemoryError
    try:
        with nogil:
            for r in range(m):
                for i in range(n):
                    a[i] = w[r, i]
                out[r] = _inv_merge(a, a + n, n)
    finally:
        free(a)
    return out_arr


def batch_inc_count(long long[:, ::1] w, int k, bint strict):
    cdef Py_ssize_t m = w.shape[0], n = w.shape[1], r, i
    out_arr = np.empty(m, dtype=np.int64)
    cdef long long[::1] out = out_arr
    if k == 0:
        out_arr.fill(1)
        return out_arr
    if k > n:
        out_arr.fill(0)
        return out_arr
    cdef int vmax = 0
    cdef long long v
    for r in range(m):
        for i in range(n):
            v = w[r, i]
            if v <= 0:
                raise ValueError("values must be positive")
            if v > vmax:
                vmax = <int> v
    cdef size_t cells = (k + 1) * (vmax + 1)
    cdef long long* trees = <long long*> malloc(cells * sizeof(long long))
    if trees == NULL:
        raise MemoryError
    try:
        with nogil:
            for r in range(m):
                memset(trees, 0, cells * sizeof(long long))
                out[r] = _inc_count(&w[r, 0], n, k, strict, vmax, trees)
    finally:
        free(trees)
    return out_arr


def batch_inc_total(long long[:, ::1] w, bint strict):
    cdef Py_ssize_t m = w.shape[0], n = w.shape[1], r, i
    out_arr = np.empty(m, dtype=np.int64)
    cdef long long[::1] out = out_arr
    cdef int vmax = 0
    cdef long long v
    for r in range(m):
        for i in range(n):
            v = w[r, i]
            if v <= 0:
                raise ValueError("values must be positive")
            if v > vmax:
                vmax = <int> v
    cdef long long* tree = <long long*> malloc((vmax + 1) * sizeof(long long))
    if tree == NULL:
        raise MemoryError
    try:
        with nogil:
            for r in range(m):
                memset(tree, 0, (vmax + 1) * sizeof(long long))
                out[r] = _inc_total(&w[r, 0], n, strict, vmax, tree)
    finally:
        free(tree)
    return out_arr
