"""Deterministic counting statistics on concrete words and permutations.

Counts are exact Python integers (totals reach 2^n). The fast kernels are
used whenever the result provably fits in int64; otherwise the unbounded
pure-Python DP runs. Brute-force enumeration oracles are kept alongside the
DP counters for testing.
"""
from __future__ import annotations

from itertools import combinations
from typing import Sequence

from . import kernels

BRUTE_FIXED_K_LIMIT = 20
BRUTE_TOTAL_LIMIT = 16
BRUTE_STEELE_LIMIT = 8


def require_word(seq: Sequence[int], alphabet: int | None = None) -> tuple[int, ...]:
    """Validate letters are positive ints (and <= alphabet when given)."""
    w = tuple(int(x) for x in seq)
    if any(x < 1 for x in w):
        raise ValueError("letters must be >= 1")
    if alphabet is not None and any(x > alphabet for x in w):
        raise ValueError(f"letters must be <= alphabet size {alphabet}")
    return w


def require_permutation(seq: Sequence[int]) -> tuple[int, ...]:
    """Validate that seq is a bijection of {1, ..., n}."""
    p = tuple(int(x) for x in seq)
    if sorted(p) != list(range(1, len(p) + 1)):
        raise ValueError("not a permutation of 1..n")
    return p


def count_weak_inc_k(word: Sequence[int], k: int) -> int:
    """Number of weakly increasing subsequences of length k (1 for k=0)."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return kernels.count_increasing(require_word(word), k, strict=False)


def count_strict_inc_k(seq: Sequence[int], k: int) -> int:
    """Strictly increasing analogue of :func:`count_weak_inc_k`."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return kernels.count_increasing(require_word(seq), k, strict=True)


def count_weak_inc_total(word: Sequence[int]) -> int:
    """Total number of weakly increasing subsequences, empty one included."""
    return kernels.count_increasing_total(require_word(word), strict=False)


def count_strict_inc_total(seq: Sequence[int]) -> int:
    """Total number of strictly increasing subsequences, empty one included."""
    return kernels.count_increasing_total(require_word(seq), strict=True)


def inversions(seq: Sequence[int]) -> int:
    """Number of pairs i < j with seq[i] > seq[j]; O(n log n) merge count."""
    return kernels.count_inversions(list(seq))


def inversions_brute(seq: Sequence[int]) -> int:
    """O(n^2) oracle for :func:`inversions`."""
    n = len(seq)
    return sum(seq[i] > seq[j] for i in range(n) for j in range(i + 1, n))


def steele_similarity(pi: Sequence[int], rho: Sequence[int]) -> int:
    """Number of nonempty common subsequences of two permutations.

    Positions i1 < ... < ik and j1 < ... < jk match when pi(i_l) = rho(j_l)
    for every l. Mapping through rho^{-1} turns the matching positions into a
    strictly increasing subsequence of q(i) = rho^{-1}(pi(i)), so the count
    equals count_strict_inc_total(q) - 1.
    """
    p = require_permutation(pi)
    r = require_permutation(rho)
    if len(p) != len(r):
        raise ValueError("permutations must have the same size")
    rinv = [0] * (len(r) + 1)
    for pos, v in enumerate(r, start=1):
        rinv[v] = pos
    q = [rinv[v] for v in p]
    return count_strict_inc_total(q) - 1


def steele_similarity_brute(pi: Sequence[int], rho: Sequence[int]) -> int:
    """Double subset-pair enumeration oracle for :func:`steele_similarity`."""
    p = require_permutation(pi)
    r = require_permutation(rho)
    n = len(p)
    if len(r) != n:
        raise ValueError("permutations must have the same size")
    if n > BRUTE_STEELE_LIMIT:
        raise ValueError(f"brute Steele oracle limited to n <= {BRUTE_STEELE_LIMIT}")
    total = 0
    for k in range(1, n + 1):
        for idx in combinations(range(n), k):
            left = tuple(p[i] for i in idx)
            for jdx in combinations(range(n), k):
                if left == tuple(r[j] for j in jdx):
                    total += 1
    return total


def _is_increasing(vals: Sequence[int], strict: bool) -> bool:
    if strict:
        return all(vals[i] < vals[i + 1] for i in range(len(vals) - 1))
    return all(vals[i] <= vals[i + 1] for i in range(len(vals) - 1))


def brute_count(seq: Sequence[int], k: int, relation: str) -> int:
    """Direct enumeration over index subsets; test oracle for the DP counters."""
    strict = _parse_relation(relation)
    n = len(seq)
    if n > BRUTE_FIXED_K_LIMIT:
        raise ValueError(f"brute_count limited to n <= {BRUTE_FIXED_K_LIMIT}")
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return 1
    return sum(_is_increasing([seq[i] for i in idx], strict)
               for idx in combinations(range(n), k))


def brute_total(seq: Sequence[int], relation: str) -> int:
    """Enumeration oracle for the total counters (includes the empty subsequence)."""
    strict = _parse_relation(relation)
    n = len(seq)
    if n > BRUTE_TOTAL_LIMIT:
        raise ValueError(f"brute_total limited to n <= {BRUTE_TOTAL_LIMIT}")
    total = 1
    for k in range(1, n + 1):
        total += sum(_is_increasing([seq[i] for i in idx], strict)
                     for idx in combinations(range(n), k))
    return total


def _parse_relation(relation: str) -> bool:
    if relation == "weak":
        return False
    if relation == "strict":
        return True
    raise ValueError("relation must be 'weak' or 'strict'")
