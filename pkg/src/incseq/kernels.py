"""Backend selection for the counting kernels.

At import time we prefer the compiled extension (``incseq._kernels``) and
fall back to the pure-Python implementations. Set ``INCSEQ_BACKEND=python``
to force the fallback (used by the benchmark and for debugging).

The compiled kernels work in int64, so the dispatchers below route any call
whose count could exceed 2^63 - 1 to the pure path, which uses unbounded
Python integers. Counts are bounded by C(n, k) for fixed-length statistics
and by 2^n for totals, which makes the eligibility tests cheap and exact.
"""
from __future__ import annotations

import os
from math import comb
from typing import Sequence

import numpy as np

from . import _kernels_py as _py

try:
    from . import _kernels as _ext
except ImportError:  # pragma: no cover - built environments have it
    _ext = None

if os.environ.get("INCSEQ_BACKEND", "").lower() == "python":
    _ext = None

HAVE_EXT = _ext is not None
BACKEND = "cython" if HAVE_EXT else "python"

_I64_MAX = 2**63 - 1


def _as_i64(seq) -> np.ndarray:
    return np.ascontiguousarray(seq, dtype=np.int64)


def count_inversions(seq: Sequence[int]) -> int:
    if HAVE_EXT and len(seq) > 0:
        return int(_ext.inv_count(_as_i64(seq)))
    return _py.inv_count(list(seq))


def count_increasing(seq: Sequence[int], k: int, strict: bool) -> int:
    n = len(seq)
    if HAVE_EXT and 0 < k <= n and comb(n, k) <= _I64_MAX:
        return int(_ext.inc_count(_as_i64(seq), k, strict))
    return _py.inc_count(list(seq), k, strict)


def count_increasing_total(seq: Sequence[int], strict: bool) -> int:
    n = len(seq)
    if HAVE_EXT and 0 < n <= 62:
        return int(_ext.inc_total(_as_i64(seq), strict))
    return _py.inc_total(list(seq), strict)


def batch_count_inversions(w: np.ndarray) -> np.ndarray:
    w = _as_i64(w)
    if HAVE_EXT and w.shape[0] > 0 and w.shape[1] > 0:
        return _ext.batch_inv_count(w)
    return _py.batch_inv_count(w)


def batch_count_increasing(w: np.ndarray, k: int, strict: bool) -> np.ndarray:
    w = _as_i64(w)
    n = w.shape[1]
    if 0 < k <= n and comb(n, k) > _I64_MAX:
        raise OverflowError("count bound C(n, k) exceeds int64; use scalar API")
    if HAVE_EXT:
        return _ext.batch_inc_count(w, k, strict)
    return _py.batch_inc_count(w, k, strict)


def batch_count_increasing_total(w: np.ndarray, strict: bool) -> np.ndarray:
    w = _as_i64(w)
    if w.shape[1] > 62:
        raise OverflowError("count bound 2^n exceeds int64; use scalar API")
    if HAVE_EXT:
        return _ext.batch_inc_total(w, strict)
    return _py.batch_inc_total(w, strict)
