"""Exhaustive exact distributions on small instances, TV/ordering machinery.

Enumeration budgets are explicit and enforced with hard errors, never by
silent truncation: the default cap is 10^7 enumerated states, overridable
per call or through the INCSEQ_BUDGET environment variable.
"""
from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
from math import factorial

from . import seqstats
from .exactarith import binomial, compositions, multinomial
from .moments import ProbVector
from .sampling import riffle_assemble, riffle_rank_map

DEFAULT_BUDGET = 10**7
PERM_ENUM_MAX_N = 9


class BudgetError(Exception):
    """Enumeration would exceed the configured state budget."""


def resolve_budget(budget: int | None = None) -> int:
    if budget is not None:
        return budget
    env = os.environ.get("INCSEQ_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def _check_budget(states: int, budget: int | None) -> None:
    cap = resolve_budget(budget)
    if states > cap:
        raise BudgetError(f"{states} states exceed budget {cap}")


@dataclass(frozen=True)
class DistTable:
    """Exact finite law of an integer statistic: value -> probability."""
    entries: dict[int, Fraction]
    statistic: str
    params: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if any(q < 0 for q in self.entries.values()):
            raise ValueError("negative probability")
        if sum(self.entries.values(), Fraction(0)) != 1:
            raise ValueError("probabilities must sum to exactly 1")

    def support(self) -> list[int]:
        return sorted(self.entries)

    def mean(self) -> Fraction:
        return sum((Fraction(v) * q for v, q in self.entries.items()), Fraction(0))

    def second_moment(self) -> Fraction:
        return sum((Fraction(v * v) * q for v, q in self.entries.items()), Fraction(0))

    def variance(self) -> Fraction:
        return self.second_moment() - self.mean() ** 2

    def cdf_at(self, z) -> Fraction:
        return sum((q for v, q in self.entries.items() if v <= z), Fraction(0))

    def survival_at(self, z) -> Fraction:
        return sum((q for v, q in self.entries.items() if v >= z), Fraction(0))


_FIXED_K = re.compile(r"^(weak|strict)-inc-(\d+)$")


def _word_statistic(statistic: str):
    m = _FIXED_K.match(statistic)
    if m:
        strict = m.group(1) == "strict"
        k = int(m.group(2))
        if strict:
            return lambda w: seqstats.count_strict_inc_k(w, k)
        return lambda w: seqstats.count_weak_inc_k(w, k)
    if statistic == "weak-inc-total":
        return seqstats.count_weak_inc_total
    if statistic == "strict-inc-total":
        return seqstats.count_strict_inc_total
    if statistic == "inversions":
        return seqstats.inversions
    raise ValueError(f"unknown word statistic {statistic!r}")


def dist_word_stat(n: int, p: ProbVector, statistic: str,
                   budget: int | None = None) -> DistTable:
    """Law of a word statistic by enumerating all a^n words with their exact
    product weights."""
    a = p.alphabet
    _check_budget(a**n, budget)
    fn = _word_statistic(statistic)
    acc: dict[int, Fraction] = {}
    for w in product(range(1, a + 1), repeat=n):
        weight = Fraction(1)
        for x in w:
            weight *= p[x - 1]
        if weight == 0:
            continue
        v = fn(w)
        acc[v] = acc.get(v, Fraction(0)) + weight
    return DistTable(acc, statistic, {"n": n, "p": p.probs})


def dist_word_all_k(n: int, p: ProbVector, strict: bool = False,
                    budget: int | None = None) -> dict[int, DistTable]:
    """Laws of the fixed-length counts for every k in one enumeration pass."""
    a = p.alphabet
    _check_budget(a**n, budget)
    accs: list[dict[int, Fraction]] = [{} for _ in range(n + 1)]
    for w in product(range(1, a + 1), repeat=n):
        weight = Fraction(1)
        for x in w:
            weight *= p[x - 1]
        if weight == 0:
            continue
        for k in range(n + 1):
            v = seqstats.count_strict_inc_k(w, k) if strict \
                else seqstats.count_weak_inc_k(w, k)
            acc = accs[k]
            acc[v] = acc.get(v, Fraction(0)) + weight
    kind = "strict" if strict else "weak"
    return {k: DistTable(accs[k], f"{kind}-inc-{k}", {"n": n, "p": p.probs})
            for k in range(n + 1)}


def _perm_statistic(statistic: str):
    m = _FIXED_K.match(statistic)
    if m and m.group(1) == "strict":
        k = int(m.group(2))
        return lambda pm: seqstats.count_strict_inc_k(pm, k)
    if statistic == "strict-inc-total":
        return seqstats.count_strict_inc_total
    if statistic == "inversions":
        return seqstats.inversions
    if statistic == "steele-vs-identity":
        return lambda pm: seqstats.count_strict_inc_total(pm) - 1
    raise ValueError(f"unknown permutation statistic {statistic!r}")


def dist_perm_stat(n: int, statistic: str, budget: int | None = None) -> DistTable:
    """Law of a permutation statistic under the uniform measure on S_n."""
    if n > PERM_ENUM_MAX_N:
        raise BudgetError(f"permutation enumeration capped at n <= {PERM_ENUM_MAX_N}")
    _check_budget(factorial(n), budget)
    fn = _perm_statistic(statistic)
    acc: dict[int, Fraction] = {}
    q = Fraction(1, factorial(n))
    for pm in permutations(range(1, n + 1)):
        v = fn(pm)
        acc[v] = acc.get(v, Fraction(0)) + q
    return DistTable(acc, statistic, {"n": n})


def perm_rank(perm) -> int:
    """Lexicographic rank of an images tuple within S_n (0-based)."""
    p = list(perm)
    n = len(p)
    rank = 0
    for i in range(n):
        smaller = sum(p[j] < p[i] for j in range(i + 1, n))
        rank += smaller * factorial(n - 1 - i)
    return rank


def perm_unrank(rank: int, n: int) -> tuple[int, ...]:
    avail = list(range(1, n + 1))
    out = []
    for i in range(n, 0, -1):
        f = factorial(i - 1)
        idx, rank = divmod(rank, f)
        out.append(avail.pop(idx))
    return tuple(out)


def _multiset_words(counts: list[int]):
    if all(c == 0 for c in counts):
        yield ()
        return
    for i, c in enumerate(counts):
        if c:
            counts[i] -= 1
            for rest in _multiset_words(counts):
                yield (i + 1,) + rest
            counts[i] += 1


def dist_riffle(n: int, p: ProbVector, method: str,
                budget: int | None = None) -> DistTable:
    """Exact p-shuffle law on S_n, keyed by lexicographic permutation rank.

    method="forward" enumerates cut-size compositions with multinomial
    weights times uniform interleavings assembled from piles;
    method="inverse" enumerates digit words and applies the rank map. The
    two tables must coincide.
    """
    a = p.alphabet
    acc: dict[int, Fraction] = {}
    if method == "forward":
        states = sum(multinomial(n, c) for c in compositions(n, a))
        _check_budget(states, budget)
        for cuts in compositions(n, a):
            weight_cut = Fraction(1)
            for pi, b in zip(p, cuts):
                if b:
                    if pi == 0:
                        weight_cut = Fraction(0)
                        break
                    weight_cut *= pi ** b
            if weight_cut == 0:
                continue
            # weight_cut = P(cuts) / #interleavings, shared by each interleaving
            for word in _multiset_words(list(cuts)):
                perm = riffle_assemble(cuts, word)
                r = perm_rank(perm)
                acc[r] = acc.get(r, Fraction(0)) + weight_cut
    elif method == "inverse":
        _check_budget(a**n, budget)
        for w in product(range(1, a + 1), repeat=n):
            weight = Fraction(1)
            for x in w:
                weight *= p[x - 1]
            if weight == 0:
                continue
            r = perm_rank(riffle_rank_map(w))
            acc[r] = acc.get(r, Fraction(0)) + weight
    else:
        raise ValueError("method must be 'forward' or 'inverse'")
    return DistTable(acc, "riffle-perm", {"n": n, "p": p.probs, "method": method})


# ---------------------------------------------------------------------------
# distances, orderings, bounds

def tv_distance(d1: DistTable, d2: DistTable) -> Fraction:
    """Total variation distance (1/2) sum |p - q| over the union support."""
    support = set(d1.entries) | set(d2.entries)
    tot = sum((abs(d1.entries.get(v, Fraction(0)) - d2.entries.get(v, Fraction(0)))
               for v in support), Fraction(0))
    return tot / 2


def stochastic_order_leq(d1: DistTable, d2: DistTable) -> bool:
    """True iff d1 <=_s d2, i.e. F_1(z) >= F_2(z) for every z."""
    support = sorted(set(d1.entries) | set(d2.entries))
    f1 = f2 = Fraction(0)
    for v in support:
        f1 += d1.entries.get(v, Fraction(0))
        f2 += d2.entries.get(v, Fraction(0))
        if f1 < f2:
            return False
    return True


def kolmogorov_distance(d1: DistTable, d2: DistTable) -> Fraction:
    """sup_z |F_1(z) - F_2(z)| over the union support."""
    support = sorted(set(d1.entries) | set(d2.entries))
    f1 = f2 = Fraction(0)
    best = Fraction(0)
    for v in support:
        f1 += d1.entries.get(v, Fraction(0))
        f2 += d2.entries.get(v, Fraction(0))
        best = max(best, abs(f1 - f2))
    return best


def tv_bound_uniform(n: int, a: int) -> Fraction:
    """1 - a!/((a-n)! a^n), the uniform-alphabet TV bound; needs a >= n."""
    if a < n:
        raise ValueError("uniform TV bound requires a >= n")
    falling = Fraction(factorial(a), factorial(a - n))
    return 1 - falling / a**n


def tv_bound_general(n: int, p: ProbVector) -> Fraction:
    """C(n,2) sum_i p_i^2, the collision bound for arbitrary letter laws."""
    return binomial(n, 2) * sum((x * x for x in p), Fraction(0))


@dataclass(frozen=True)
class TailIntervalRecord:
    z: int
    upper_tail_word: Fraction
    upper_tail_perm: Fraction
    bound: Fraction
    ok: bool
    left_equality: bool


def tail_interval_records(d_word: DistTable, d_perm: DistTable,
                          bound: Fraction) -> list[TailIntervalRecord]:
    """Check P(Y >= z) in (P(Z >= z), P(Z >= z) + bound] over the union
    support.

    Strict left inequality cannot hold where both tails are 1 (z at or below
    both supports), so left equality is recorded and treated as a pass.
    """
    out = []
    support = sorted(set(d_word.entries) | set(d_perm.entries))
    for z in support:
        ty = d_word.survival_at(z)
        tz = d_perm.survival_at(z)
        ok = tz <= ty <= tz + bound
        out.append(TailIntervalRecord(z, ty, tz, bound, ok, ty == tz))
    return out
