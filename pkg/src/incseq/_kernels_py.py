"""Pure-Python counting kernels.

Fallback backend when the compiled extension is unavailable, and the exact
path for counts that overflow 64-bit integers (Python ints are unbounded).
Scalar routines accept any sequence of positive integers; batch routines
take 2-D int64 arrays and lean on numpy where the statistic vectorizes.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np


def _fenwick_add(tree: list, i: int, val) -> None:
    n = len(tree) - 1
    while i <= n:
        tree[i] += val
        i += i & (-i)


def _fenwick_prefix(tree: list, i: int):
    s = 0
    while i > 0:
        s += tree[i]
        i -= i & (-i)
    return s


def _ranks(seq: Sequence[int]) -> tuple[list[int], int]:
    order = {v: r + 1 for r, v in enumerate(sorted(set(seq)))}
    return [order[v] for v in seq], len(order)


def inv_count(seq: Sequence[int]) -> int:
    """Number of pairs i < j with seq[i] > seq[j], by merge counting."""
    a = list(seq)
    n = len(a)
    buf = [0] * n
    total = 0
    width = 1
    while width < n:
        for lo in range(0, n, 2 * width):
            mid = min(lo + width, n)
            hi = min(lo + 2 * width, n)
            i, j, k = lo, mid, lo
            while i < mid and j < hi:
                if a[i] <= a[j]:
                    buf[k] = a[i]
                    i += 1
                else:
                    buf[k] = a[j]
                    total += mid - i
                    j += 1
                k += 1
            buf[k:hi] = a[i:mid] if i < mid else a[j:hi]
            a[lo:hi] = buf[lo:hi]
        width *= 2
    return total


def inc_count(seq: Sequence[int], k: int, strict: bool) -> int:
    """Count length-k increasing subsequences (weak unless ``strict``).

    Fenwick-tree DP over value ranks, one tree per subsequence length:
    O(n k log n) big-int operations.
    """
    n = len(seq)
    if k == 0:
        return 1
    if k > n:
        return 0
    ranks, m = _ranks(seq)
    trees = [[0] * (m + 1) for _ in range(k + 1)]
    for pos, r in enumerate(ranks):
        upto = r - 1 if strict else r
        jmax = min(k, pos + 1)
        for j in range(jmax, 1, -1):
            cnt = _fenwick_prefix(trees[j - 1], upto)
            if cnt:
                _fenwick_add(trees[j], r, cnt)
        _fenwick_add(trees[1], r, 1)
    return _fenwick_prefix(trees[k], m)


def inc_total(seq: Sequence[int], strict: bool) -> int:
    """Count all increasing subsequences, the empty one included.

    ends(i) = 1 + sum of ends(j) over admissible predecessors j < i; the
    Fenwick tree holds ends-sums by value rank.
    """
    ranks, m = _ranks(seq)
    tree = [0] * (m + 1)
    for r in ranks:
        upto = r - 1 if strict else r
        _fenwick_add(tree, r, 1 + _fenwick_prefix(tree, upto))
    return 1 + _fenwick_prefix(tree, m)


# ---------------------------------------------------------------------------
# batch variants (int64 in, int64 out; caller guarantees no overflow)

def batch_inv_count(w: np.ndarray) -> np.ndarray:
    w = np.ascontiguousarray(w, dtype=np.int64)
    m, n = w.shape
    vmax = int(w.max(initial=0))
    out = np.zeros(m, dtype=np.int64)
    if vmax <= 64:
        # per-letter sweep: pairs (i<j) with w_i > v at positions j where w_j == v;
        # cumsum at such j already excludes j itself since w_j > v is false there
        for v in range(1, vmax + 1):
            gt = np.cumsum(w > v, axis=1)
            out += ((w == v) * gt).sum(axis=1)
        return out
    # chunked pairwise comparison to bound memory
    iu, ju = np.triu_indices(n, k=1)
    step = max(1, (1 << 24) // max(1, len(iu)))
    for lo in range(0, m, step):
        blk = w[lo:lo + step]
        out[lo:lo + step] = (blk[:, iu] > blk[:, ju]).sum(axis=1)
    return out


def _batch_ties(w: np.ndarray) -> np.ndarray:
    m, n = w.shape
    ties = np.zeros(m, dtype=np.int64)
    for v in np.unique(w):
        c = (w == v).sum(axis=1)
        ties += c * (c - 1) // 2
    return ties


def batch_inc_count(w: np.ndarray, k: int, strict: bool) -> np.ndarray:
    w = np.ascontiguousarray(w, dtype=np.int64)
    m, n = w.shape
    if k == 2:
        pairs = n * (n - 1) // 2
        inv = batch_inv_count(w)
        out = pairs - inv
        if strict:
            out -= _batch_ties(w)
        return out
    return np.array([inc_count(row.tolist(), k, strict) for row in w], dtype=np.int64)


def batch_inc_total(w: np.ndarray, strict: bool) -> np.ndarray:
    w = np.ascontiguousarray(w, dtype=np.int64)
    return np.array([inc_total(row.tolist(), strict) for row in w], dtype=np.int64)
