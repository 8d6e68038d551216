"""Exact verification suites: formula-vs-oracle, inequalities, identities.

Each suite returns a list of :class:`Case` records carrying the exact left
and right-hand values as strings, so a failing grid point can be audited
externally. The CLI ``verify`` subcommand prints one line per case; the
acceptance tests assert every case passes.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from . import distributions as dist
from . import empirics, moments, sampling, seqstats
from .exactarith import (binomial, format_fraction, gen_binomial,
                         series_coeff_cyc2, series_coeff_cyc3)
from .moments import ProbVector


@dataclass(frozen=True)
class Case:
    suite: str
    name: str
    lhs: str
    rhs: str
    relation: str
    ok: bool
    note: str = ""


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return format_fraction(x)
    return str(x)


def _case(suite, name, lhs, rhs, relation, ok, note="") -> Case:
    return Case(suite, name, _fmt(lhs), _fmt(rhs), relation, bool(ok), note)


def failures(cases: list[Case]) -> list[Case]:
    return [c for c in cases if not c.ok]


# ---------------------------------------------------------------------------
# formula vs enumeration oracles

WORD_GRID = {2: 8, 3: 6, 4: 5}


def suite_formulas_words(grid: dict[int, int] | None = None) -> list[Case]:
    """Fixed-k word means/second moments and total means vs enumeration."""
    out = []
    for a, n_max in (grid or WORD_GRID).items():
        p = ProbVector.uniform(a)
        for n in range(n_max + 1):
            tables = dist.dist_word_all_k(n, p)
            for k in range(n + 1):
                mean_f = moments.mean_weak_inc_uniform(n, k, a).value
                mean_e = tables[k].mean()
                out.append(_case("formulas-words", f"mean n={n} k={k} a={a}",
                                 mean_f, mean_e, "==", mean_f == mean_e))
                m2_f = moments.second_moment_weak_inc_uniform(n, k, a).value
                m2_e = tables[k].second_moment()
                out.append(_case("formulas-words", f"2nd n={n} k={k} a={a}",
                                 m2_f, m2_e, "==", m2_f == m2_e))
            tot_f = moments.mean_total_words(n, a=a).value
            tot_e = dist.dist_word_stat(n, p, "weak-inc-total").mean()
            out.append(_case("formulas-words", f"total-mean n={n} a={a}",
                             tot_f, tot_e, "==", tot_f == tot_e))
    return out


def suite_formulas_perms(n_max: int = 7) -> list[Case]:
    """Fixed-k and total permutation moments vs enumeration, plus the
    hand-verified spot values."""
    out = []
    for n in range(n_max + 1):
        for k in range(n + 1):
            t = dist.dist_perm_stat(n, f"strict-inc-{k}")
            mean_f = moments.mean_inc_perm(n, k).value
            out.append(_case("formulas-perms", f"mean n={n} k={k}",
                             mean_f, t.mean(), "==", mean_f == t.mean()))
            m2_f = moments.second_moment_inc_perm(n, k).value
            out.append(_case("formulas-perms", f"2nd n={n} k={k}",
                             m2_f, t.second_moment(), "==", m2_f == t.second_moment()))
        tt = dist.dist_perm_stat(n, "strict-inc-total")
        tot_f = moments.mean_total_perm(n).value
        tot2_f = moments.second_moment_total_perm(n).value
        out.append(_case("formulas-perms", f"total-mean n={n}",
                         tot_f, tt.mean(), "==", tot_f == tt.mean()))
        out.append(_case("formulas-perms", f"total-2nd n={n}",
                         tot2_f, tt.second_moment(), "==",
                         tot2_f == tt.second_moment()))
    spots = [
        ("E[Z_2]", moments.mean_total_perm(2).value, Fraction(7, 2)),
        ("E[Z_2^2]", moments.second_moment_total_perm(2).value, Fraction(25, 2)),
        ("E[Z_1^2]", moments.second_moment_total_perm(1).value, Fraction(4)),
    ]
    for name, got, want in spots:
        out.append(_case("formulas-perms", f"spot {name}", got, want, "==",
                         got == want))
    return out


def suite_binary_closed(n_max: int = 60) -> list[Case]:
    """Sum form of the a=2 total mean vs the (3/2)^(n-1)(n+3)/2 closed form."""
    out = []
    for n in range(1, n_max + 1):
        s = moments.mean_total_words(n, a=2).value
        c = moments.mean_total_words_binary_closed(n)
        out.append(_case("binary-closed", f"n={n}", s, c, "==", s == c))
    return out


def suite_bounds(n_max: int = 6, alphabets: tuple[int, ...] = (2, 3),
                 binary_n_max: int = 20) -> list[Case]:
    """Second-moment bound sandwich vs enumeration; binary forms vs general."""
    out = []
    for a in alphabets:
        p = ProbVector.uniform(a)
        for n in range(n_max + 1):
            lo, up = moments.bounds_second_moment_total_uniform(n, a)
            e = dist.dist_word_stat(n, p, "weak-inc-total").second_moment()
            out.append(_case("bounds", f"sandwich n={n} a={a}",
                             f"{_fmt(lo)} <= {_fmt(e)}", _fmt(up), "<=",
                             lo <= e <= up))
    for n in range(binary_n_max + 1):
        lo, up = moments.bounds_second_moment_total_uniform(n, 2)
        lo2, up2 = moments.bounds_second_moment_total_binary(n)
        out.append(_case("bounds", f"binary-forms n={n}",
                         f"({_fmt(lo)},{_fmt(up)})", f"({_fmt(lo2)},{_fmt(up2)})",
                         "==", lo == lo2 and up == up2))
    return out


def suite_inversions(n_max: int = 6, a_max: int = 4, random_words: int = 1000,
                     seed: int = 20260810) -> list[Case]:
    """Inversion closed forms vs enumeration; k=2 complement identity."""
    out = []
    for a in range(2, a_max + 1):
        p = ProbVector.uniform(a)
        for n in range(n_max + 1):
            t = dist.dist_word_stat(n, p, "inversions")
            mean_f, var_f = moments.inv_word_moments(n, a)
            out.append(_case("inversions", f"mean n={n} a={a}",
                             mean_f, t.mean(), "==", mean_f == t.mean()))
            out.append(_case("inversions", f"var n={n} a={a}",
                             var_f, t.variance(), "==", var_f == t.variance()))
    rng = sampling.make_rng(seed, 0)
    bad = 0
    for _ in range(random_words):
        n = int(rng.integers(0, 50, endpoint=True))
        a = int(rng.integers(2, 6, endpoint=True))
        w = [int(x) for x in rng.integers(1, a, size=n, endpoint=True)]
        if seqstats.count_weak_inc_k(w, 2) != comb(n, 2) - seqstats.inversions(w):
            bad += 1
    out.append(_case("inversions", f"complement-identity {random_words} words",
                     bad, 0, "==", bad == 0, f"seed={seed}"))
    return out


# ---------------------------------------------------------------------------
# identities and appendix closed forms

def suite_identities() -> list[Case]:
    out = []
    for i in range(13):
        lhs = gen_binomial(Fraction(-1, 2), i)
        rhs = Fraction((-1) ** i * binomial(2 * i, i), 4 ** i)
        out.append(_case("identities", f"(id) i={i}", lhs, rhs, "==", lhs == rhs))
    for r in range(11):
        for m in range(11):
            lhs = sum(gen_binomial(r + 1, 2 * i + 1) * binomial(r - 2 * i, m - i)
                      * 2 ** (2 * i + 1) for i in range(m + 1))
            rhs = Fraction(binomial(2 * r + 2, 2 * m + 1))
            out.append(_case("identities", f"(id2) r={r} m={m}", lhs, rhs, "==",
                             lhs == rhs))
    for m in range(11):
        for l in range(11):
            lhs = sum(binomial(m + 2 * l - i, 2 * l) * binomial(l, i) ** 2
                      for i in range(min(m, l) + 1))
            rhs = binomial(m + l, l) ** 2
            out.append(_case("identities", f"(id3) m={m} l={l}", lhs, rhs, "==",
                             lhs == rhs))
    return out


def suite_appendix(t_max: int = 3, cyc3_km_max: int = 5, cyc3_a_max: int = 4,
                   cyc2_km_max: int = 6) -> list[Case]:
    """Closed-form cycle coefficients vs the truncated-series oracle."""
    out = []
    for t in range(t_max + 1):
        series3 = series_coeff_cyc3(t, (cyc3_km_max, cyc3_km_max, cyc3_a_max - 1))
        for km in range(cyc3_km_max + 1):
            for a in range(2, cyc3_a_max + 1):
                closed = moments.cyc3_coeff_closed(km + t, t, a)
                oracle = series3.coeff(km, km, a - 1)
                out.append(_case("appendix", f"cyc3 t={t} k-t={km} a={a}",
                                 closed, oracle, "==", closed == oracle))
        series2 = series_coeff_cyc2(t, (cyc2_km_max, cyc2_km_max))
        for km in range(cyc2_km_max + 1):
            closed = moments.cyc2_coeff_closed(km + t, t)
            oracle = series2.coeff(km, km)
            out.append(_case("appendix", f"cyc2 t={t} k-t={km}",
                             closed, oracle, "==", closed == oracle))
    return out


# ---------------------------------------------------------------------------
# asymptotics

def suite_asymptotics(n_big: int = 10**4, n_total: int = 2000,
                      ratio_tol: float = 0.05) -> list[Case]:
    out = []
    c2 = moments.var_asymp_const_perm(2).value
    out.append(_case("asymptotics", "C(2)", c2, Fraction(1, 36), "==",
                     c2 == Fraction(1, 36)))
    c22 = moments.var_asymp_const_word(2, 2).value
    out.append(_case("asymptotics", "C(2,2)", c22, Fraction(1, 48), "==",
                     c22 == Fraction(1, 48)))
    out.append(_case("asymptotics", "C(1) degenerate",
                     moments.var_asymp_const_perm(1).value, 0, "==",
                     moments.var_asymp_const_perm(1).value == 0))
    for k in (2, 3):
        mean = moments.mean_inc_perm(n_big, k).value
        var = moments.second_moment_inc_perm(n_big, k).value - mean**2
        ratio = float(var / (moments.var_asymp_const_perm(k).value
                             * n_big ** (2 * k - 1)))
        out.append(_case("asymptotics", f"perm ratio k={k} n={n_big}",
                         f"{ratio:.6f}", f"1 +/- {ratio_tol}", "~",
                         abs(ratio - 1) <= ratio_tol))
    for k, a in ((2, 2), (2, 5), (3, 2)):
        mean = moments.mean_weak_inc_uniform(n_big, k, a).value
        var = moments.second_moment_weak_inc_uniform(n_big, k, a).value - mean**2
        ratio = float(var / (moments.var_asymp_const_word(k, a).value
                             * n_big ** (2 * k - 1)))
        out.append(_case("asymptotics", f"word ratio k={k} a={a} n={n_big}",
                         f"{ratio:.6f}", f"1 +/- {ratio_tol}", "~",
                         abs(ratio - 1) <= ratio_tol))
    for a in (2, 3):
        ratios = []
        for n in (250, 500, 1000, n_total):
            r = moments.mean_total_words(n, a=a).value / moments.mean_total_word_asymp(n, a)
            ratios.append(float(r))
        out.append(_case("asymptotics", f"total-mean ratio a={a} n={n_total}",
                         f"{ratios[-1]:.6f}", "[0.95, 1.05]", "in",
                         0.95 <= ratios[-1] <= 1.05))
        monotone = all(x >= y for x, y in zip(ratios, ratios[1:]))
        out.append(_case("asymptotics", f"total-mean ratio monotone a={a}",
                         "->".join(f"{r:.4f}" for r in ratios), "nonincreasing",
                         "~", monotone))
    return out


# ---------------------------------------------------------------------------
# total variation, tails, dominance (Theorem-7.1-style suites)

def _word_table(cache, n, a, k):
    key = (n, a)
    if key not in cache:
        cache[key] = dist.dist_word_all_k(n, ProbVector.uniform(a))
    return cache[key][k]


def _perm_table(cache, n, k):
    key = (n, k)
    if key not in cache:
        cache[key] = dist.dist_perm_stat(n, f"strict-inc-{k}")
    return cache[key]


def suite_tv(n_max: int = 5, a_max: int = 7, random_p: int = 20,
             seed: int = 20260811, include_totals: bool = True) -> list[Case]:
    """TV bounds, tail intervals, and the a -> infinity convergence check."""
    out = []
    wcache: dict = {}
    pcache: dict = {}
    for n in range(1, n_max + 1):
        for a in range(max(n, 2), a_max + 1):
            bound = dist.tv_bound_uniform(n, a)
            for k in range(n + 1):
                dw = _word_table(wcache, n, a, k)
                dp = _perm_table(pcache, n, k)
                d = dist.tv_distance(dw, dp)
                out.append(_case("tv", f"uniform n={n} a={a} k={k}",
                                 d, bound, "<=", d <= bound))
                recs = dist.tail_interval_records(dw, dp, bound)
                bad = [r for r in recs if not r.ok]
                eq = sum(r.left_equality for r in recs)
                out.append(_case("tv", f"tail n={n} a={a} k={k}",
                                 len(bad), 0, "==", not bad,
                                 f"left-equalities={eq}"))
    rng = sampling.make_rng(seed, 0)
    for n in range(1, n_max + 1):
        for a in (2, 3):
            for trial in range(random_p):
                p = empirics.random_rational_prob_vector(a, rng)
                bound = dist.tv_bound_general(n, p)
                tables = dist.dist_word_all_k(n, p)
                for k in range(n + 1):
                    d = dist.tv_distance(tables[k], _perm_table(pcache, n, k))
                    out.append(_case("tv", f"general n={n} a={a} p#{trial} k={k}",
                                     d, bound, "<=", d <= bound))
    if include_totals:
        for n in range(1, min(n_max, 4) + 1):
            tot_perm = dist.dist_perm_stat(n, "strict-inc-total")
            for a in range(max(n, 2), a_max + 1):
                dw = dist.dist_word_stat(n, ProbVector.uniform(a), "weak-inc-total")
                bound = dist.tv_bound_uniform(n, a)
                d = dist.tv_distance(dw, tot_perm)
                out.append(_case("tv", f"totals n={n} a={a}", d, bound, "<=",
                                 d <= bound))
    return out


def suite_tv_convergence(n_max: int = 4, extra: int = 10) -> list[Case]:
    """d_TV(word, perm) nonincreasing in a and vanishing at the bound's rate."""
    out = []
    pcache: dict = {}
    wcache: dict = {}
    for n in range(1, n_max + 1):
        ok_by_k = {k: True for k in range(n + 1)}
        prev = {k: None for k in range(n + 1)}
        for a in range(max(n, 2), n + extra + 1):
            bound = dist.tv_bound_uniform(n, a)
            for k in range(n + 1):
                d = dist.tv_distance(_word_table(wcache, n, a, k),
                                     _perm_table(pcache, n, k))
                if (prev[k] is not None and d > prev[k]) or d > bound:
                    ok_by_k[k] = False
                prev[k] = d
        for k in range(n + 1):
            out.append(_case("tv-convergence", f"n={n} k={k}",
                             "monotone to 0 at bound rate", "holds", "~",
                             ok_by_k[k]))
    return out


def suite_dominance(n_max: int = 5, a_max: int = 6) -> list[Case]:
    """Exact CDF orderings: finer alphabets and permutations sit below."""
    out = []
    wcache: dict = {}
    pcache: dict = {}
    for n in range(1, n_max + 1):
        for k in range(n + 1):
            for a in range(2, a_max + 1):
                da = _word_table(wcache, n, a, k)
                for b in range(a, a_max + 1):
                    db = _word_table(wcache, n, b, k)
                    ok = dist.stochastic_order_leq(db, da)
                    out.append(_case("dominance", f"Y(b)<=Y(a) n={n} k={k} a={a} b={b}",
                                     "CDF ordering", "holds", "~", ok))
                dz = _perm_table(pcache, n, k)
                ok = dist.stochastic_order_leq(dz, da)
                out.append(_case("dominance", f"Z<=Y(a) n={n} k={k} a={a}",
                                 "CDF ordering", "holds", "~", ok))
    return out


# ---------------------------------------------------------------------------
# riffle shuffles and Steele

def suite_riffle(n_max: int = 4, a_max: int = 3) -> list[Case]:
    out = []
    for a in range(2, a_max + 1):
        vecs = [ProbVector.uniform(a)]
        biased = [Fraction(2 ** (a - i), 2 ** a - 1) for i in range(1, a + 1)]
        vecs.append(ProbVector(biased))
        for p in vecs:
            for n in range(n_max + 1):
                f = dist.dist_riffle(n, p, "forward")
                i = dist.dist_riffle(n, p, "inverse")
                out.append(_case("riffle", f"fwd=inv n={n} a={a} p={[str(x) for x in p]}",
                                 "forward table", "inverse table", "==",
                                 f.entries == i.entries))
    t = dist.dist_riffle(2, ProbVector.uniform(2), "inverse")
    pid = t.entries.get(dist.perm_rank((1, 2)), Fraction(0))
    out.append(_case("riffle", "P(identity) n=2 a=2", pid, Fraction(3, 4), "==",
                     pid == Fraction(3, 4)))
    padded = dist.dist_riffle(3, ProbVector([Fraction(1, 2), Fraction(1, 2), Fraction(0)]),
                              "inverse")
    plain = dist.dist_riffle(3, ProbVector.uniform(2), "inverse")
    out.append(_case("riffle", "empty pile reduces to fewer piles",
                     "3-pile with zero weight", "2-pile", "==",
                     padded.entries == plain.entries))
    return out


def suite_steele(exhaustive_n: int = 4, random_pairs: int = 1000,
                 random_n_max: int = 8, enum_n_max: int = 6,
                 identity_n_max: int = 30, seed: int = 20260812) -> list[Case]:
    out = []
    from itertools import permutations as iperm
    bad = 0
    checked = 0
    for n in range(1, exhaustive_n + 1):
        for pi in iperm(range(1, n + 1)):
            for rho in iperm(range(1, n + 1)):
                checked += 1
                if seqstats.steele_similarity(pi, rho) != \
                        seqstats.steele_similarity_brute(pi, rho):
                    bad += 1
    out.append(_case("steele", f"exhaustive n<={exhaustive_n} ({checked} pairs)",
                     bad, 0, "==", bad == 0))
    rng = sampling.make_rng(seed, 0)
    bad = 0
    for _ in range(random_pairs):
        n = int(rng.integers(1, random_n_max, endpoint=True))
        pi = [int(x) + 1 for x in rng.permutation(n)]
        rho = [int(x) + 1 for x in rng.permutation(n)]
        if seqstats.steele_similarity(pi, rho) != \
                seqstats.steele_similarity_brute(pi, rho):
            bad += 1
    out.append(_case("steele", f"random pairs x{random_pairs}", bad, 0, "==",
                     bad == 0, f"seed={seed}"))
    for n in range(1, enum_n_max + 1):
        t = dist.dist_perm_stat(n, "steele-vs-identity")
        mean_f, second_f = moments.steele_moments(n)
        out.append(_case("steele", f"mean vs enumeration n={n}",
                         mean_f, t.mean(), "==", mean_f == t.mean()))
        out.append(_case("steele", f"2nd vs enumeration n={n}",
                         second_f, t.second_moment(), "==",
                         second_f == t.second_moment()))
    for n in range(1, identity_n_max + 1):
        direct = moments.steele_mean_direct(n)
        shifted = moments.mean_total_perm(n).value - 1
        out.append(_case("steele", f"mean identity n={n}", direct, shifted,
                         "==", direct == shifted))
    return out


def suite_extremality(n_max: int = 6, a_max: int = 3, trials: int = 50,
                      seed: int = 20260813) -> list[Case]:
    """Uniform letters minimize the fixed-k mean among laws on [a].

    The mean is Schur-convex in the letter law (extra ties create extra
    weakly increasing tuples; e.g. p=(3/4,1/4) at n=3, k=2 gives 39/16,
    above the uniform 9/4), so no random law may fall below the uniform
    value, and uniform p must reproduce it exactly.
    """
    out = []
    for a in range(2, a_max + 1):
        for n in range(1, n_max + 1):
            for k in range(n + 1):
                rep = empirics.schur_extremality_check(n, k, a, trials, seed)
                out.append(_case("extremality", f"n={n} k={k} a={a}",
                                 rep.below_uniform, 0, "==",
                                 rep.below_uniform == 0,
                                 f"above={rep.above_uniform} ties={rep.ties} "
                                 f"trials={trials} seed={seed}"))
            uni = moments.mean_weak_inc_general(n, n, ProbVector.uniform(a)).value
            closed = moments.mean_weak_inc_uniform(n, n, a).value
            out.append(_case("extremality", f"uniform specialization n={n} a={a}",
                             uni, closed, "==", uni == closed))
    return out


SUITES = {
    "formulas-words": suite_formulas_words,
    "formulas-perms": suite_formulas_perms,
    "binary-closed": suite_binary_closed,
    "bounds": suite_bounds,
    "inversions": suite_inversions,
    "identities": suite_identities,
    "appendix": suite_appendix,
    "asymptotics": suite_asymptotics,
    "tv": suite_tv,
    "tv-convergence": suite_tv_convergence,
    "dominance": suite_dominance,
    "riffle": suite_riffle,
    "steele": suite_steele,
    "extremality": suite_extremality,
}
