from itertools import permutations
from math import comb

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from incseq import seqstats as ss


def test_weak_inc_k_examples():
    assert ss.count_weak_inc_k((1, 2, 2), 2) == 3
    assert ss.count_weak_inc_k((2, 1), 2) == 0
    assert ss.count_weak_inc_k((3, 1, 4, 1, 5), 0) == 1
    assert ss.count_weak_inc_k((1, 2), 5) == 0


def test_total_examples():
    assert ss.count_weak_inc_total((1, 2)) == 4
    assert ss.count_weak_inc_total((1, 1, 1)) == 8
    assert ss.count_strict_inc_total((2, 1)) == 3
    assert ss.count_weak_inc_total(()) == 1


def test_inversions_examples():
    assert ss.inversions((2, 1)) == 1
    assert ss.inversions((1, 2, 3)) == 0
    assert ss.inversions((3, 1, 2)) == 2
    assert ss.inversions(()) == 0


def test_strictly_decreasing_has_no_long_strict_runs():
    seq = list(range(9, 0, -1))
    for k in range(2, 10):
        assert ss.count_strict_inc_k(seq, k) == 0


@given(st.lists(st.integers(min_value=1, max_value=5), max_size=10),
       st.integers(min_value=0, max_value=11))
def test_dp_equals_brute(word, k):
    assert ss.count_weak_inc_k(word, k) == ss.brute_count(word, k, "weak")
    assert ss.count_strict_inc_k(word, k) == ss.brute_count(word, k, "strict")


def test_dp_equals_brute_random_grid(gridcfg):
    rng = np.random.default_rng(gridcfg["seed_counting"])
    for _ in range(1000):
        n = int(rng.integers(0, 13))
        a = int(rng.integers(1, 7))
        w = [int(x) for x in rng.integers(1, a, size=n, endpoint=True)]
        k = int(rng.integers(0, n + 2))
        assert ss.count_weak_inc_k(w, k) == ss.brute_count(w, k, "weak")
        assert ss.count_strict_inc_k(w, k) == ss.brute_count(w, k, "strict")
        assert ss.count_weak_inc_total(w) == ss.brute_total(w, "weak")
        assert ss.count_strict_inc_total(w) == ss.brute_total(w, "strict")


def test_total_decomposes_into_fixed_lengths(gridcfg):
    rng = np.random.default_rng(gridcfg["seed_counting"] + 1)
    for _ in range(50):
        n = int(rng.integers(0, 12))
        w = [int(x) for x in rng.integers(1, 4, size=n, endpoint=True)]
        assert ss.count_weak_inc_total(w) == \
            sum(ss.count_weak_inc_k(w, k) for k in range(n + 1))


def test_pairs_complement_identity(gridcfg):
    rng = np.random.default_rng(gridcfg["seed_counting"] + 2)
    for _ in range(200):
        n = int(rng.integers(0, 40))
        w = [int(x) for x in rng.integers(1, 6, size=n, endpoint=True)]
        assert ss.count_weak_inc_k(w, 2) == comb(n, 2) - ss.inversions(w)


def test_inversions_merge_equals_brute(gridcfg):
    rng = np.random.default_rng(gridcfg["seed_counting"] + 3)
    for _ in range(100):
        n = int(rng.integers(0, 30))
        w = [int(x) for x in rng.integers(1, 9, size=n, endpoint=True)]
        assert ss.inversions(w) == ss.inversions_brute(w)


def test_steele_examples():
    assert ss.steele_similarity((1, 2, 3), (1, 2, 3)) == 7
    assert ss.steele_similarity((1, 2), (2, 1)) == 2
    assert ss.steele_similarity((1,), (1,)) == 1


def test_steele_exhaustive_small():
    for n in range(1, 4):
        for pi in permutations(range(1, n + 1)):
            for rho in permutations(range(1, n + 1)):
                assert ss.steele_similarity(pi, rho) == \
                    ss.steele_similarity_brute(pi, rho)


def test_steele_symmetry_and_random_oracle(gridcfg):
    rng = np.random.default_rng(gridcfg["seed_counting"] + 4)
    for _ in range(100):
        n = int(rng.integers(1, 8, endpoint=True))
        pi = [int(x) + 1 for x in rng.permutation(n)]
        rho = [int(x) + 1 for x in rng.permutation(n)]
        v = ss.steele_similarity(pi, rho)
        assert v == ss.steele_similarity(rho, pi)
        assert v == ss.steele_similarity_brute(pi, rho)


def test_validation_errors():
    with pytest.raises(ValueError):
        ss.count_weak_inc_k((0, 1), 1)
    with pytest.raises(ValueError):
        ss.steele_similarity((1, 2), (1, 1))
    with pytest.raises(ValueError):
        ss.steele_similarity((1, 2), (1, 2, 3))
    with pytest.raises(ValueError):
        ss.brute_count(list(range(1, 25)), 2, "weak")
    with pytest.raises(ValueError):
        ss.brute_total([1] * 20, "weak")
    with pytest.raises(ValueError):
        ss.brute_count([1, 2], 1, "sideways")
    with pytest.raises(ValueError):
        ss.steele_similarity_brute(tuple(range(1, 10)), tuple(range(1, 10)))
