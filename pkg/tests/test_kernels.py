from math import comb

import numpy as np
import pytest

from incseq import _kernels_py as kpy
from incseq import kernels
from incseq.seqstats import (count_strict_inc_k, count_weak_inc_k,
                             count_weak_inc_total)

ext = pytest.importorskip("incseq._kernels") if kernels.HAVE_EXT else None
needs_ext = pytest.mark.skipif(not kernels.HAVE_EXT,
                               reason="compiled extension not built")


def _random_rows(rng, m, n, vmax):
    return rng.integers(1, vmax, size=(m, n), endpoint=True).astype(np.int64)


@needs_ext
def test_compiled_matches_python_scalars():
    rng = np.random.default_rng(11)
    for _ in range(200):
        n = int(rng.integers(0, 14))
        vmax = int(rng.integers(1, 9))
        seq = [int(x) for x in rng.integers(1, vmax, size=n, endpoint=True)]
        arr = np.array(seq, dtype=np.int64)
        assert kpy.inv_count(seq) == (int(ext.inv_count(arr)) if n else 0)
        for k in range(0, min(n, 5) + 1):
            for strict in (False, True):
                assert int(ext.inc_count(arr, k, strict)) == \
                    kpy.inc_count(seq, k, strict)
        if n:
            for strict in (False, True):
                assert int(ext.inc_total(arr, strict)) == kpy.inc_total(seq, strict)


@needs_ext
def test_compiled_matches_python_batches():
    rng = np.random.default_rng(12)
    w = _random_rows(rng, 50, 12, 5)
    assert np.array_equal(ext.batch_inv_count(w), kpy.batch_inv_count(w))
    for k in (0, 1, 2, 3, 13):
        for strict in (False, True):
            assert np.array_equal(ext.batch_inc_count(w, k, strict),
                                  kpy.batch_inc_count(w, k, strict))
    for strict in (False, True):
        assert np.array_equal(ext.batch_inc_total(w, strict),
                              kpy.batch_inc_total(w, strict))


def test_python_batch_inv_large_alphabet_path():
    rng = np.random.default_rng(13)
    w = rng.permuted(np.tile(np.arange(1, 101, dtype=np.int64), (20, 1)), axis=1)
    expect = np.array([kpy.inv_count([int(x) for x in row]) for row in w])
    assert np.array_equal(kpy.batch_inv_count(w), expect)


def test_dispatch_beyond_int64_uses_big_integers():
    # counts bounded by C(70, 35) > 2^63: must route to the unbounded DP
    w = list(range(1, 71))
    assert count_weak_inc_k(w, 35) == comb(70, 35)
    assert count_weak_inc_total([1] * 63) == 2**63
    assert count_weak_inc_total([1] * 100) == 2**100


def test_batch_overflow_guard():
    w = np.tile(np.arange(1, 71, dtype=np.int64), (2, 1))
    with pytest.raises(OverflowError):
        kernels.batch_count_increasing(w, 35, strict=False)
    w2 = np.ones((2, 63), dtype=np.int64)
    with pytest.raises(OverflowError):
        kernels.batch_count_increasing_total(w2, strict=False)


def test_strict_weak_coincide_on_permutations():
    rng = np.random.default_rng(14)
    for _ in range(20):
        n = int(rng.integers(1, 10))
        perm = [int(x) + 1 for x in rng.permutation(n)]
        for k in range(n + 1):
            assert count_strict_inc_k(perm, k) == count_weak_inc_k(perm, k)
