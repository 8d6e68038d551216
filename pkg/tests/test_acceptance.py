"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Grids, tolerances and seeds are pinned in gridconfig.json. Every exact
criterion is zero-tolerance (Fraction equality or inequality); the
Monte-Carlo criteria use the stated thresholds (5 sigma, KS <= 0.02) with
pinned seeds.
"""
import time
from fractions import Fraction

import numpy as np
import pytest

from incseq import (clt_diagnostic, dominance_coupling_batch,
                    mean_weak_inc_general, mean_weak_inc_uniform, verify)
from incseq.empirics import random_rational_prob_vector
from incseq.kernels import batch_count_inversions
from incseq.moments import ProbVector
from incseq.sampling import make_rng, riffle_inverse_batch


def _gate(criterion: str, ok: bool, detail: str) -> bool:
    print(f"ACCEPTANCE {'PASS' if ok else 'FAIL'} [{criterion}] {detail}")
    return ok


def _suite_gate(criterion: str, cases, extra: str = "") -> None:
    bad = verify.failures(cases)
    detail = f"{len(cases) - len(bad)}/{len(cases)} exact cases"
    if extra:
        detail += f"; {extra}"
    ok = _gate(criterion, not bad, detail)
    assert ok, f"failing cases: {[(c.name, c.lhs, c.relation, c.rhs) for c in bad[:5]]}"


def test_criterion_01_word_formulas_vs_enumeration(gridcfg):
    t0 = time.monotonic()
    grid = {int(a): n for a, n in gridcfg["word_grid"].items()}
    cases = verify.suite_formulas_words(grid)
    elapsed = time.monotonic() - t0
    _suite_gate("1 word formulas", cases, f"{elapsed:.1f}s (target <60s)")
    assert elapsed < 60


def test_criterion_02_perm_formulas_vs_enumeration(gridcfg):
    cases = verify.suite_formulas_perms(gridcfg["perm_n_max"])
    _suite_gate("2 permutation formulas", cases)


def test_criterion_03_binary_closed_form(gridcfg):
    cases = verify.suite_binary_closed(gridcfg["binary_n_max"])
    _suite_gate("3 binary closed form", cases)


def test_criterion_04_second_moment_bounds(gridcfg):
    cases = verify.suite_bounds(gridcfg["bounds_n_max"],
                                tuple(gridcfg["bounds_alphabets"]))
    _suite_gate("4 second-moment bounds", cases)


def test_criterion_05_inversion_moments(gridcfg):
    cases = verify.suite_inversions(gridcfg["inv_n_max"], gridcfg["inv_a_max"],
                                    gridcfg["inv_random_words"],
                                    gridcfg["seed_counting"])
    _suite_gate("5 inversion moments", cases)


def test_criterion_06_appendix_identities():
    cases = verify.suite_appendix() + verify.suite_identities()
    _suite_gate("6 appendix + binomial identities", cases)


def test_criterion_07_asymptotic_constants():
    cases = verify.suite_asymptotics()
    _suite_gate("7 asymptotic constants", cases)


def test_criterion_08_tv_suite(gridcfg):
    cases = verify.suite_tv(gridcfg["tv_n_max"], gridcfg["tv_a_max"],
                            gridcfg["tv_random_p"], gridcfg["seed_tv_random_p"])
    cases += verify.suite_tv_convergence()
    _suite_gate("8 total-variation suite", cases)


def test_criterion_09_dominance_and_coupling(gridcfg):
    cases = verify.suite_dominance(gridcfg["dom_n_max"], gridcfg["dom_a_max"])
    draws = gridcfg["coupling_draws"]
    violations = {}
    for a, b in ((2, 3), (2, 4)):
        xi1, xi2 = dominance_coupling_batch(draws, 6, 2, a, b,
                                            gridcfg["seed_coupling"])
        violations[(a, b)] = int((xi2 > xi1).sum())
    ok = not verify.failures(cases) and not any(violations.values())
    _gate("9 dominance + coupling", ok,
          f"{len(cases)} exact orderings; coupling violations "
          f"{violations} over {draws} draws each")
    assert not verify.failures(cases)
    assert violations == {(2, 3): 0, (2, 4): 0}


def test_criterion_10_riffle_shuffles(gridcfg):
    cases = verify.suite_riffle(gridcfg["riffle_n_max"], gridcfg["riffle_a_max"])
    m, n = gridcfg["pathwise_samples"], gridcfg["pathwise_n"]
    perms, digits = riffle_inverse_batch(m, n, ProbVector.uniform(3),
                                         gridcfg["seed_pathwise"])
    mismatches = int((batch_count_inversions(perms)
                      != batch_count_inversions(digits)).sum())
    ok = not verify.failures(cases) and mismatches == 0
    _gate("10 riffle shuffles", ok,
          f"{len(cases)} exact table cases; {mismatches} pathwise inversion "
          f"mismatches over {m} samples (n={n})")
    assert not verify.failures(cases)
    assert mismatches == 0


def test_criterion_11_clt_diagnostics(gridcfg):
    n = gridcfg["clt_n"]
    samples = gridcfg["clt_samples"]
    threshold = gridcfg["clt_threshold"]
    t0 = time.monotonic()
    runs = [
        ("word", "weak-inc-2", ProbVector.uniform(3), gridcfg["seed_clt_word"]),
        ("perm", "strict-inc-2", None, gridcfg["seed_clt_perm"]),
        ("riffle", "inversions", ProbVector.uniform(2), gridcfg["seed_clt_riffle"]),
    ]
    results = {}
    for model, stat, p, seed in runs:
        rep = clt_diagnostic(model, stat, n, samples, seed, p=p)
        results[f"{model}/{stat}"] = rep.ks_to_normal
    elapsed = time.monotonic() - t0
    ok = all(ks <= threshold for ks in results.values())
    detail = ", ".join(f"{k}: ks={v:.4f}" for k, v in results.items())
    _gate("11 CLT diagnostics", ok and elapsed < 120,
          f"{detail} (threshold {threshold}); {elapsed:.1f}s (target <120s)")
    assert ok, results
    assert elapsed < 120


def test_criterion_12_steele(gridcfg):
    cases = verify.suite_steele(gridcfg["steele_exhaustive_n"],
                                gridcfg["steele_random_pairs"],
                                gridcfg["steele_random_n_max"],
                                gridcfg["steele_enum_n_max"],
                                gridcfg["steele_identity_n_max"],
                                gridcfg["seed_steele_pairs"])
    _suite_gate("12 Steele similarity", cases)


def test_criterion_13_uniform_maximality_as_stated(gridcfg):
    """Criterion as stated: every random rational p on [a] satisfies
    E[count(p)] <= E[count(uniform)] exactly, for n <= 6, k <= n, a <= 3.

    The stated inequality direction is mathematically false: the mean is a
    Schur-convex function of the letter law (extra letter collisions create
    extra weakly increasing tuples), so the uniform law is the MINIMIZER
    among laws on [a], not the maximizer. Deterministic counterexample:
    p = (3/4, 1/4), n = 3, k = 2 gives mean 39/16 > 9/4 = uniform value,
    confirmed by direct enumeration of all 8 words. This test implements
    the criterion faithfully and is expected to fail; the corrected
    direction is verified exhaustively in the companion test below.
    """
    rng = make_rng(gridcfg["seed_extremality"], 0)
    trials = gridcfg["extremality_trials"]
    counterexamples = []
    total = 0
    for a in range(2, gridcfg["extremality_a_max"] + 1):
        for n in range(1, gridcfg["extremality_n_max"] + 1):
            uniform_by_k = {k: mean_weak_inc_uniform(n, k, a).value
                            for k in range(n + 1)}
            for k in range(n + 1):
                for _ in range(trials):
                    total += 1
                    p = random_rational_prob_vector(a, rng)
                    m = mean_weak_inc_general(n, k, p).value
                    if m > uniform_by_k[k]:
                        counterexamples.append((n, k, a, p.probs, m))
    ok = not counterexamples
    _gate("13 uniform maximality (as stated)", ok,
          f"{total - len(counterexamples)}/{total} exact comparisons satisfy "
          f"E[count(p)] <= E[count(uniform)]")
    assert ok, (
        "the stated inequality fails: the mean count is Schur-convex in the "
        "letter law, so the uniform law minimizes it on [a]; e.g. "
        f"n,k,a,p,mean = {counterexamples[0]} exceeds the uniform value "
        f"{mean_weak_inc_uniform(*counterexamples[0][:2], counterexamples[0][2]).value}; "
        "see the corrected-direction test, which passes on the same grid"
    )


def test_criterion_13_corrected_direction_uniform_minimality(gridcfg):
    """Corrected direction on the same grid and seeds: no random rational p
    on [a] ever falls below the uniform mean, and the uniform law reproduces
    it exactly (the mean is Schur-convex, minimized at uniform)."""
    cases = verify.suite_extremality(gridcfg["extremality_n_max"],
                                     gridcfg["extremality_a_max"],
                                     gridcfg["extremality_trials"],
                                     gridcfg["seed_extremality"])
    _suite_gate("13* uniform minimality (corrected direction)", cases)
