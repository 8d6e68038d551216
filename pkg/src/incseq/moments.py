"""Exact closed-form moments, bounds and asymptotic constants.

Every value is an exact ``Fraction``. Statistics covered: weakly increasing
subsequence counts of random words (fixed length and totals), strictly
increasing subsequence counts of uniform permutations (fixed length and
totals), word inversions, the Steele similarity of permutation pairs, and
the leading variance constants of the fixed-length counts.

Conventions fixed here: the total counts include the empty subsequence
(their k=0 term contributes 1), the Steele similarity excludes it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Sequence

from .exactarith import RationalLike, binomial, compositions, gen_binomial


class ProbVector:
    """Exact rational probability vector on the alphabet {1, ..., a}.

    Entries must be non-negative, sum to exactly 1, and at least two must be
    positive (degenerate letter distributions are rejected).
    """

    __slots__ = ("probs",)

    def __init__(self, probs: Sequence[RationalLike]):
        p = tuple(Fraction(x) for x in probs)
        if len(p) < 2:
            raise ValueError("alphabet size must be >= 2")
        if any(x < 0 for x in p):
            raise ValueError("probabilities must be >= 0")
        if sum(p) != 1:
            raise ValueError("probabilities must sum to exactly 1")
        if sum(x > 0 for x in p) < 2:
            raise ValueError("distribution must be non-degenerate")
        self.probs = p

    @classmethod
    def uniform(cls, a: int) -> "ProbVector":
        return cls([Fraction(1, a)] * a)

    @property
    def alphabet(self) -> int:
        return len(self.probs)

    def is_uniform(self) -> bool:
        return all(x == Fraction(1, self.alphabet) for x in self.probs)

    def __iter__(self):
        return iter(self.probs)

    def __len__(self):
        return len(self.probs)

    def __getitem__(self, i):
        return self.probs[i]

    def __eq__(self, other):
        return isinstance(other, ProbVector) and self.probs == other.probs

    def __repr__(self):
        return f"ProbVector({[str(x) for x in self.probs]})"


@dataclass(frozen=True)
class MomentValue:
    value: Fraction
    statistic: str
    params: dict = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class AsympConstant:
    value: Fraction
    kind: str
    params: dict = field(default_factory=dict, compare=False)


def _half(numer: int) -> Fraction:
    return Fraction(numer, 2)


# ---------------------------------------------------------------------------
# random words, fixed length k

def mean_weak_inc_general(n: int, k: int, p: ProbVector) -> MomentValue:
    """E of the length-k weakly increasing count: C(n,k) * sum over
    compositions (x_1..x_a) of k of prod p_i^{x_i}."""
    if n < 0 or k < 0:
        raise ValueError("n, k must be >= 0")
    c = binomial(n, k)
    total = Fraction(0)
    if c:
        for xs in compositions(k, p.alphabet):
            term = Fraction(1)
            for pi, xi in zip(p, xs):
                if xi:
                    if pi == 0:
                        term = Fraction(0)
                        break
                    term *= pi ** xi
            total += term
    return MomentValue(c * total, "weak-inc-k-mean",
                       {"n": n, "k": k, "p": p.probs})


def mean_weak_inc_uniform(n: int, k: int, a: int) -> MomentValue:
    """Uniform-alphabet specialization: C(n,k) C(a+k-1, a-1) / a^k."""
    if a < 2:
        raise ValueError("a must be >= 2")
    val = Fraction(binomial(n, k) * binomial(a + k - 1, a - 1), a**k)
    return MomentValue(val, "weak-inc-k-mean", {"n": n, "k": k, "a": a})


def second_moment_weak_inc_uniform(n: int, k: int, a: int) -> MomentValue:
    """Second moment of the length-k weakly increasing count, uniform letters.

    Double sum over the intersection size t of the two index sets and the
    alphabet split s; half-integer binomials are evaluated as exact
    generalized binomials.
    """
    if a < 2:
        raise ValueError("a must be >= 2")
    if n < 0 or k < 0:
        raise ValueError("n, k must be >= 0")
    total = Fraction(0)
    for t in range(k + 1):
        c_n = binomial(n, 2 * k - t)
        if c_n == 0:
            continue
        for s in range(min(a - 1, k - t) + 1):
            total += (Fraction(4 ** (k - t), a ** (2 * k - t)) * c_n
                      * gen_binomial(_half(2 * (k - t - s) - 1), k - t - s)
                      * gen_binomial(_half(2 * s + t - 1), s)
                      * binomial(2 * k - t - s + a - 1, t + 2 * s)
                      * binomial(2 * k - 2 * t - 3 * s + a - 1, a - 1 - s))
    return MomentValue(total, "weak-inc-k-2nd", {"n": n, "k": k, "a": a})


# ---------------------------------------------------------------------------
# uniform permutations, fixed length k

def mean_inc_perm(n: int, k: int) -> MomentValue:
    """E of the length-k strictly increasing count in a uniform permutation."""
    if n < 0 or k < 0:
        raise ValueError("n, k must be >= 0")
    val = Fraction(binomial(n, k), factorial(k))
    return MomentValue(val, "strict-inc-k-mean", {"n": n, "k": k})


def second_moment_inc_perm(n: int, k: int) -> MomentValue:
    """Second moment of the length-k strictly increasing count."""
    if n < 0 or k < 0:
        raise ValueError("n, k must be >= 0")
    total = Fraction(0)
    for t in range(k + 1):
        c_n = binomial(n, 2 * k - t)
        if c_n == 0:
            continue
        for s in range(k - t + 1):
            total += (Fraction(4 ** (k - t), factorial(2 * k - t)) * c_n
                      * gen_binomial(_half(2 * (k - t - s) - 1), k - t - s)
                      * gen_binomial(_half(2 * s + t - 1), s)
                      * binomial(2 * k - t, 2 * k - 2 * t - 2 * s))
    return MomentValue(total, "strict-inc-k-2nd", {"n": n, "k": k})


# ---------------------------------------------------------------------------
# totals

def mean_total_perm(n: int) -> MomentValue:
    """E of the total strictly increasing count (empty subsequence included)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    val = sum(Fraction(comb(n, k), factorial(k)) for k in range(n + 1))
    return MomentValue(val, "strict-inc-total-mean", {"n": n})


def second_moment_total_perm(n: int) -> MomentValue:
    """Second moment of the total strictly increasing count."""
    if n < 0:
        raise ValueError("n must be >= 0")
    total = Fraction(0)
    for k in range(n + 1):
        for l in range(n - k + 1):
            total += (Fraction(4**l, factorial(k + l)) * comb(n, k + l)
                      * gen_binomial(_half(k - 1) + l, l))
    return MomentValue(total, "strict-inc-total-2nd", {"n": n})


def mean_total_words(n: int, p: ProbVector | None = None,
                     a: int | None = None) -> MomentValue:
    """E of the total weakly increasing count, by summing the fixed-k means.

    Exactly one of ``p`` and ``a`` must be given. For a=2 the closed form
    (3/2)^(n-1) (n+3)/2 is evaluated as well and cross-asserted.
    """
    if (p is None) == (a is None):
        raise ValueError("give exactly one of p, a")
    if n < 0:
        raise ValueError("n must be >= 0")
    if p is not None:
        val = sum((mean_weak_inc_general(n, k, p).value for k in range(n + 1)),
                  Fraction(0))
        return MomentValue(val, "weak-inc-total-mean", {"n": n, "p": p.probs})
    if a < 2:
        raise ValueError("a must be >= 2")
    val = sum(Fraction(comb(n, k) * comb(a + k - 1, a - 1), a**k)
              for k in range(n + 1))
    if a == 2 and n >= 1:
        closed = Fraction(3, 2) ** (n - 1) * Fraction(n + 3, 2)
        if closed != val:
            raise AssertionError("binary closed form disagrees with k-sum")
    return MomentValue(val, "weak-inc-total-mean", {"n": n, "a": a})


def mean_total_words_binary_closed(n: int) -> Fraction:
    """(3/2)^(n-1) (n+3)/2, the a=2 closed form of the total mean."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return Fraction(3, 2) ** (n - 1) * Fraction(n + 3, 2)


def bounds_second_moment_total_uniform(n: int, a: int) -> tuple[Fraction, Fraction]:
    """Exact lower/upper bounds for the second moment of the total count.

    The two double sums differ only by the 2^{k1} factor; the common
    prefactor is n!/((a-1)!)^2.
    """
    if a < 2:
        raise ValueError("a must be >= 2")
    if n < 0:
        raise ValueError("n must be >= 0")
    pref = Fraction(factorial(n), factorial(a - 1) ** 2)
    lower = upper = Fraction(0)
    for k1 in range(n + 1):
        f1 = factorial(a + k1 - 1)
        for k2 in range(n - k1 + 1):
            base = Fraction(f1 * factorial(a + k2 - 1),
                            factorial(k1) ** 2 * factorial(k2) ** 2
                            * factorial(n - k1 - k2) * a ** (k1 + k2))
            lower += base
            upper += 2 ** k1 * base
    return pref * lower, pref * upper


def bounds_second_moment_total_binary(n: int) -> tuple[Fraction, Fraction]:
    """a=2 simplification of the bounds; equals the general form exactly."""
    lower = upper = Fraction(0)
    for k1 in range(n + 1):
        for k2 in range(n - k1 + 1):
            mult = (factorial(n)
                    // (factorial(k1) * factorial(k2) * factorial(n - k1 - k2)))
            base = (k1 + 1) * (k2 + 1) * mult
            lower += Fraction(base, 2 ** (k1 + k2))
            upper += Fraction(base, 2 ** k2)
    return lower, upper


def mean_total_word_asymp(n: int, a: int) -> Fraction:
    """Asymptotic approximant n^(a-1)/((a-1)! a^(a-1)) (1+1/a)^(n-a+1).

    Exact rational; used only for ratio diagnostics (divide first, then
    convert the near-1 ratio to float).
    """
    if a < 2:
        raise ValueError("a must be >= 2")
    if n < 1:
        raise ValueError("n must be >= 1")
    return (Fraction(n ** (a - 1), factorial(a - 1) * a ** (a - 1))
            * Fraction(a + 1, a) ** (n - a + 1))


# ---------------------------------------------------------------------------
# word inversions

def inv_word_moments(n: int, a: int) -> tuple[Fraction, Fraction]:
    """(mean, variance) of the inversion count of a uniform random word."""
    if a < 2:
        raise ValueError("a must be >= 2")
    if n < 0:
        raise ValueError("n must be >= 0")
    mean = Fraction(a - 1, a) * Fraction(n * (n - 1), 4)
    var = Fraction(a * a - 1, a * a) * Fraction(n * (n - 1) * (2 * n + 5), 72)
    return mean, var


# ---------------------------------------------------------------------------
# asymptotic constants

def var_asymp_const_perm(k: int) -> AsympConstant:
    """Leading n^(2k-1) coefficient of Var of the length-k permutation count.

    Zero exactly at k=1, where the statistic is deterministic.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    val = Fraction(comb(4 * k - 2, 2 * k - 1) - 2 * comb(2 * k - 1, k) ** 2,
                   2 * factorial(2 * k - 1) ** 2)
    return AsympConstant(val, "var-perm", {"k": k})


def var_asymp_const_word(k: int, a: int) -> AsympConstant:
    """Leading n^(2k-1) coefficient of Var of the length-k word count."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if a < 2:
        raise ValueError("a must be >= 2")
    s_sum = sum(Fraction(4**s * factorial(2 * k + a - s - 2),
                         factorial(2 * s + 1) * factorial(a - s - 1)
                         * factorial(k - s - 1) ** 2)
                for s in range(min(a - 1, k - 1) + 1))
    val = (Fraction(a, factorial(2 * k - 1)) * s_sum
           - Fraction(comb(k + a - 1, k) ** 2, factorial(k - 1) ** 2)) / a ** (2 * k)
    return AsympConstant(val, "var-word", {"k": k, "a": a})


def leading_coeffs(k: int, a: int | None = None) -> AsympConstant:
    """Leading n^(2k) coefficient of the second moment: 1/(k!)^4 for
    permutations, C(k+a-1, k)^2 / ((k!)^2 a^(2k)) for uniform words."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if a is None:
        return AsympConstant(Fraction(1, factorial(k) ** 4),
                             "leading-2nd-moment-perm", {"k": k})
    if a < 2:
        raise ValueError("a must be >= 2")
    val = Fraction(comb(k + a - 1, k) ** 2, factorial(k) ** 2 * a ** (2 * k))
    return AsympConstant(val, "leading-2nd-moment-word", {"k": k, "a": a})


# ---------------------------------------------------------------------------
# appendix closed forms (verified against the truncated-series oracles)

def cyc3_coeff_closed(k: int, t: int, a: int) -> Fraction:
    """Coefficient of x^(k-t) y^(k-t) z^(a-1) in the (t+1)-th power of the
    3-cycle binomial series, in closed form."""
    if not 0 <= t <= k:
        raise ValueError("need 0 <= t <= k")
    if a < 1:
        raise ValueError("a must be >= 1")
    total = Fraction(0)
    for s in range(min(a - 1, k - t) + 1):
        total += (gen_binomial(_half(2 * (k - t - s) - 1), k - t - s)
                  * gen_binomial(_half(2 * s + t - 1), s)
                  * binomial(2 * k - t - s + a - 1, t + 2 * s)
                  * binomial(2 * k - 2 * t - 3 * s + a - 1, a - 1 - s))
    return 4 ** (k - t) * total


def cyc2_coeff_closed(k: int, t: int) -> Fraction:
    """Coefficient of x^(k-t) y^(k-t) in the (t+1)-th power of the 2-cycle
    binomial series, in closed form."""
    if not 0 <= t <= k:
        raise ValueError("need 0 <= t <= k")
    total = Fraction(0)
    for s in range(k - t + 1):
        total += (gen_binomial(_half(2 * (k - t - s) - 1), k - t - s)
                  * gen_binomial(_half(2 * s + t - 1), s)
                  * binomial(2 * k - t, 2 * k - 2 * t - 2 * s))
    return 4 ** (k - t) * total


# ---------------------------------------------------------------------------
# Steele similarity

def steele_moments(n: int) -> tuple[Fraction, Fraction]:
    """(mean, second moment) of the Steele similarity of an independent pair.

    The similarity count equals the total strictly increasing count of a
    uniform permutation minus one (the empty subsequence), so the moments
    are shifts of the permutation totals.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    ez = mean_total_perm(n).value
    ez2 = second_moment_total_perm(n).value
    return ez - 1, ez2 - 2 * ez + 1


def steele_mean_direct(n: int) -> Fraction:
    """Direct sum_{k>=1} C(n,k)^2 (n-k)!/n! form of the Steele mean."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return sum(Fraction(comb(n, k) ** 2 * factorial(n - k), factorial(n))
               for k in range(1, n + 1))
