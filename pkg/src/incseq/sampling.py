"""Seeded samplers: words, uniform permutations, riffle shuffles, coupling.

Randomness contract: every sampler is a pure function of (parameters, seed,
stream). Streams are independent Philox4x64 counter-based generators keyed
by the 64-bit pair (seed, stream), so worker fan-out just assigns distinct
stream ids. numpy's Philox output is platform-independent; test vectors are
pinned in the test suite.

Letter draws invert exact rational CDF thresholds scaled to 2^64, so the
per-letter sampling bias is at most 2^-64, far below every statistical
tolerance used downstream.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import kernels
from .moments import ProbVector

_TWO64 = 1 << 64


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """Philox generator for the (seed, stream) pair."""
    if not 0 <= seed < _TWO64 or not 0 <= stream < _TWO64:
        raise ValueError("seed and stream must be 64-bit unsigned integers")
    key = np.array([seed, stream], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _u64(rng: np.random.Generator, size) -> np.ndarray:
    return rng.integers(0, _TWO64 - 1, size=size, dtype=np.uint64, endpoint=True)


def cdf_thresholds(probs) -> np.ndarray:
    """floor(F_i * 2^64) for the first a-1 cumulative sums, as uint64.

    A uniform u in [0, 2^64) maps to letter 1 + #{thresholds <= u}.
    """
    cum = Fraction(0)
    out = []
    for p in list(probs)[:-1]:
        cum += Fraction(p)
        out.append((cum.numerator * _TWO64) // cum.denominator)
    return np.array(out, dtype=np.uint64)


def _letters_from_u64(u: np.ndarray, thresholds: np.ndarray) -> np.ndarray:
    return (1 + np.searchsorted(thresholds, u, side="right")).astype(np.int64)


def sample_word(n: int, p: ProbVector, seed: int, stream: int = 0) -> tuple[int, ...]:
    """n i.i.d. letters with law p."""
    return tuple(int(x) for x in
                 sample_words_batch(1, n, p, seed, stream)[0])


def sample_words_batch(m: int, n: int, p: ProbVector, seed: int,
                       stream: int = 0) -> np.ndarray:
    rng = make_rng(seed, stream)
    thresholds = cdf_thresholds(p)
    u = _u64(rng, (m, n))
    return _letters_from_u64(u, thresholds)


def sample_uniform_perm(n: int, seed: int, stream: int = 0) -> tuple[int, ...]:
    """Uniform permutation of {1, ..., n} via a Fisher-Yates shuffle."""
    return tuple(int(x) for x in sample_perms_batch(1, n, seed, stream)[0])


def sample_perms_batch(m: int, n: int, seed: int, stream: int = 0) -> np.ndarray:
    rng = make_rng(seed, stream)
    base = np.tile(np.arange(1, n + 1, dtype=np.int64), (m, 1))
    return rng.permuted(base, axis=1)


# ---------------------------------------------------------------------------
# riffle shuffles

def riffle_assemble(cut_sizes, interleave_word) -> tuple[int, ...]:
    """Deck arrangement from pile sizes and an interleaving word.

    Piles hold consecutive cards of the sorted deck; new-deck position r
    takes the next unused card of pile interleave_word[r].
    """
    a = len(cut_sizes)
    offsets = [0] * a
    for i in range(1, a):
        offsets[i] = offsets[i - 1] + cut_sizes[i - 1]
    taken = [0] * a
    out = []
    for pile in interleave_word:
        i = pile - 1
        taken[i] += 1
        if taken[i] > cut_sizes[i]:
            raise ValueError("interleaving word inconsistent with cut sizes")
        out.append(offsets[i] + taken[i])
    return tuple(out)


def riffle_rank_map(digits) -> tuple[int, ...]:
    """rho(i) = #{j: X_j < X_i} + #{j <= i: X_j = X_i} for a digit word."""
    counts: dict[int, int] = {}
    for d in digits:
        counts[d] = counts.get(d, 0) + 1
    offset = {}
    acc = 0
    for v in sorted(counts):
        offset[v] = acc
        acc += counts[v]
    seen: dict[int, int] = {}
    out = []
    for d in digits:
        seen[d] = seen.get(d, 0) + 1
        out.append(offset[d] + seen[d])
    return tuple(out)


def riffle_rank_map_batch(digits: np.ndarray) -> np.ndarray:
    digits = np.ascontiguousarray(digits, dtype=np.int64)
    rho = np.zeros_like(digits)
    for v in np.unique(digits):
        mask = digits == v
        smaller = (digits < v).sum(axis=1, keepdims=True)
        run = np.cumsum(mask, axis=1)
        rho += mask * (smaller + run)
    return rho


def riffle_forward(n: int, p: ProbVector, seed: int, stream: int = 0) -> tuple[int, ...]:
    """Sample the cut-and-interleave description of a p-shuffle.

    Cut sizes are multinomial(n; p), realized by counting n exact inverse-CDF
    letter draws. The interleaving drops sequentially from pile i with
    probability proportional to its remaining size, which induces the uniform
    interleaving (asserted by the exact forward/inverse distribution test,
    not assumed).
    """
    rng = make_rng(seed, stream)
    a = p.alphabet
    thresholds = cdf_thresholds(p)
    cuts = [0] * a
    if n:
        for letter in _letters_from_u64(_u64(rng, n), thresholds):
            cuts[int(letter) - 1] += 1
    remaining = list(cuts)
    word = []
    for left in range(n, 0, -1):
        u = int(rng.integers(0, left))
        acc = 0
        for i in range(a):
            acc += remaining[i]
            if u < acc:
                remaining[i] -= 1
                word.append(i + 1)
                break
    return riffle_assemble(cuts, word)


def riffle_inverse(n: int, p: ProbVector, seed: int,
                   stream: int = 0) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Sample the inverse description: i.i.d. digits, stable sort, invert.

    Returns (perm, digits); perm is the rank map of the digit word, which is
    exactly the inverse of the stable sorting map.
    """
    digits = sample_word(n, p, seed, stream)
    order = np.argsort(np.array(digits, dtype=np.int64), kind="stable")
    perm = [0] * n
    for pos, card in enumerate(order, start=1):
        perm[int(card)] = pos
    return tuple(perm), digits


def riffle_inverse_batch(m: int, n: int, p: ProbVector, seed: int,
                         stream: int = 0) -> tuple[np.ndarray, np.ndarray]:
    digits = sample_words_batch(m, n, p, seed, stream)
    return riffle_rank_map_batch(digits), digits


# ---------------------------------------------------------------------------
# stochastic-dominance coupling

@dataclass(frozen=True)
class CoupledPair:
    """One draw of the coupled word statistics (xi2 <= xi1 always)."""
    xi1: int
    xi2: int
    a: int
    b: int
    n: int
    k: int

    def __post_init__(self):
        if self.xi2 > self.xi1:
            raise ValueError("coupling violated: xi2 > xi1")


def block_map_coarse(v: int, a: int, b: int) -> int:
    """[ab] -> [a]: blocks of size b; nondecreasing in v."""
    if not 1 <= v <= a * b:
        raise ValueError("v outside [1, ab]")
    return (v + b - 1) // b


def block_map_fine(v: int, a: int, b: int) -> int:
    """[ab] -> [b]: blocks of size a; nondecreasing in v."""
    if not 1 <= v <= a * b:
        raise ValueError("v outside [1, ab]")
    return (v + a - 1) // a


@lru_cache(maxsize=None)
def _quantile_table(n: int, k: int, a: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(support values, 2^64-scaled CDF thresholds) of the exact word law."""
    from .distributions import dist_word_stat

    table = dist_word_stat(n, ProbVector.uniform(a), f"weak-inc-{k}")
    values = tuple(sorted(table.entries))
    cum = Fraction(0)
    thresholds = []
    for v in values[:-1]:
        cum += table.entries[v]
        thresholds.append((cum.numerator * _TWO64) // cum.denominator)
    return values, tuple(thresholds)


def dominance_coupling_batch(m: int, n: int, k: int, a: int, b: int,
                             seed: int, stream: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """m coupled draws of the length-k weak-increase counts over alphabets
    a (xi1) and b (xi2), with xi2 <= xi1 in every draw.

    When a divides b the draws share a uniform word over [ab] pushed through
    the monotone block maps: a fine-alphabet tie then forces a coarse tie, so
    every weakly increasing tuple survives coarsening and xi2 <= xi1 holds
    pathwise. For a not dividing b no per-letter construction has that
    property (coarse blocks split fine blocks), so the draws instead invert
    one shared uniform through the two exact CDFs, which realizes the
    stochastic ordering with the same marginals.
    """
    if not 2 <= a <= b:
        raise ValueError("need 2 <= a <= b")
    rng = make_rng(seed, stream)
    if b % a == 0:
        v = rng.integers(1, a * b, size=(m, n), dtype=np.int64, endpoint=True)
        u1 = (v + b - 1) // b
        u2 = (v + a - 1) // a
        xi1 = kernels.batch_count_increasing(u1, k, strict=False)
        xi2 = kernels.batch_count_increasing(u2, k, strict=False)
        return xi1, xi2
    vals_a, thr_a = _quantile_table(n, k, a)
    vals_b, thr_b = _quantile_table(n, k, b)
    u = _u64(rng, m)
    ia = np.searchsorted(np.array(thr_a, dtype=np.uint64), u, side="right")
    ib = np.searchsorted(np.array(thr_b, dtype=np.uint64), u, side="right")
    xi1 = np.array(vals_a, dtype=np.int64)[ia]
    xi2 = np.array(vals_b, dtype=np.int64)[ib]
    return xi1, xi2


def dominance_coupling(n: int, k: int, a: int, b: int, seed: int,
                       stream: int = 0) -> CoupledPair:
    """Single coupled draw; see :func:`dominance_coupling_batch`."""
    xi1, xi2 = dominance_coupling_batch(1, n, k, a, b, seed, stream)
    return CoupledPair(int(xi1[0]), int(xi2[0]), a=a, b=b, n=n, k=k)
