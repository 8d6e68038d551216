from fractions import Fraction
from itertools import permutations

import pytest

from incseq import distributions as dd
from incseq.distributions import BudgetError, DistTable
from incseq.moments import (ProbVector, mean_weak_inc_uniform,
                            second_moment_weak_inc_uniform, steele_moments)


def test_dist_word_basic_tables():
    u2 = ProbVector.uniform(2)
    t = dd.dist_word_stat(2, u2, "weak-inc-2")
    assert t.entries == {0: Fraction(1, 4), 1: Fraction(3, 4)}
    tot = dd.dist_word_stat(1, u2, "weak-inc-total")
    assert tot.entries == {2: Fraction(1)}


def test_dist_word_moments_match_formulas():
    for a in (2, 3):
        p = ProbVector.uniform(a)
        for n in range(0, 5):
            tables = dd.dist_word_all_k(n, p)
            for k in range(n + 1):
                assert tables[k].mean() == mean_weak_inc_uniform(n, k, a).value
                assert tables[k].second_moment() == \
                    second_moment_weak_inc_uniform(n, k, a).value


def test_dist_word_biased_weights():
    p = ProbVector([Fraction(1, 4), Fraction(3, 4)])
    t = dd.dist_word_stat(2, p, "weak-inc-2")
    # only the word (2,1) is not weakly increasing
    assert t.entries == {0: Fraction(3, 16), 1: Fraction(13, 16)}


def test_dist_perm_tables():
    t = dd.dist_perm_stat(2, "strict-inc-2")
    assert t.entries == {0: Fraction(1, 2), 1: Fraction(1, 2)}
    tot = dd.dist_perm_stat(2, "strict-inc-total")
    assert tot.entries == {3: Fraction(1, 2), 4: Fraction(1, 2)}
    steele = dd.dist_perm_stat(3, "steele-vs-identity")
    mean, second = steele_moments(3)
    assert steele.mean() == mean
    assert steele.second_moment() == second


def test_unknown_statistics_rejected():
    with pytest.raises(ValueError):
        dd.dist_word_stat(2, ProbVector.uniform(2), "weak-dec-2")
    with pytest.raises(ValueError):
        dd.dist_perm_stat(2, "weak-inc-2")


def test_budget_errors():
    with pytest.raises(BudgetError):
        dd.dist_word_stat(10, ProbVector.uniform(4), "inversions", budget=1000)
    with pytest.raises(BudgetError):
        dd.dist_perm_stat(10, "inversions")
    with pytest.raises(BudgetError):
        dd.dist_riffle(9, ProbVector.uniform(3), "inverse", budget=100)


def test_budget_env_override(monkeypatch):
    monkeypatch.setenv("INCSEQ_BUDGET", "3")
    with pytest.raises(BudgetError):
        dd.dist_word_stat(2, ProbVector.uniform(2), "inversions")
    monkeypatch.delenv("INCSEQ_BUDGET")
    assert dd.resolve_budget() == dd.DEFAULT_BUDGET
    assert dd.resolve_budget(55) == 55


def test_perm_rank_lexicographic():
    perms = sorted(permutations(range(1, 5)))
    for i, pm in enumerate(perms):
        assert dd.perm_rank(pm) == i
        assert dd.perm_unrank(i, 4) == pm


def test_dist_riffle_small():
    t = dd.dist_riffle(2, ProbVector.uniform(2), "inverse")
    assert t.entries == {dd.perm_rank((1, 2)): Fraction(3, 4),
                         dd.perm_rank((2, 1)): Fraction(1, 4)}
    f = dd.dist_riffle(2, ProbVector.uniform(2), "forward")
    assert f.entries == t.entries


def test_dist_riffle_forward_equals_inverse():
    vectors = [ProbVector.uniform(2), ProbVector.uniform(3),
               ProbVector([Fraction(1, 5), Fraction(4, 5)])]
    for p in vectors:
        for n in range(0, 4):
            fwd = dd.dist_riffle(n, p, "forward")
            inv = dd.dist_riffle(n, p, "inverse")
            assert fwd.entries == inv.entries
    with pytest.raises(ValueError):
        dd.dist_riffle(2, ProbVector.uniform(2), "sideways")


def test_disttable_validation_and_stats():
    with pytest.raises(ValueError):
        DistTable({0: Fraction(1, 2)}, "x")
    with pytest.raises(ValueError):
        DistTable({0: Fraction(3, 2), 1: Fraction(-1, 2)}, "x")
    t = DistTable({1: Fraction(1, 2), 3: Fraction(1, 2)}, "x")
    assert t.mean() == 2
    assert t.variance() == 1
    assert t.support() == [1, 3]
    assert t.cdf_at(1) == Fraction(1, 2)
    assert t.survival_at(2) == Fraction(1, 2)


def test_tv_and_kolmogorov():
    y = dd.dist_word_stat(2, ProbVector.uniform(2), "weak-inc-2")
    z = dd.dist_perm_stat(2, "strict-inc-2")
    assert dd.tv_distance(y, z) == Fraction(1, 4)
    assert dd.tv_distance(y, y) == 0
    assert dd.kolmogorov_distance(y, z) == Fraction(1, 4)
    assert dd.kolmogorov_distance(y, z) <= dd.tv_distance(y, z)
    assert dd.stochastic_order_leq(z, y)
    assert not dd.stochastic_order_leq(y, z)


def test_tv_bounds():
    assert dd.tv_bound_uniform(2, 2) == Fraction(1, 2)
    assert dd.tv_bound_uniform(1, 5) == 0
    with pytest.raises(ValueError):
        dd.tv_bound_uniform(3, 2)
    assert dd.tv_bound_general(2, ProbVector.uniform(2)) == Fraction(1, 2)


def test_tail_interval_records():
    y = dd.dist_word_stat(2, ProbVector.uniform(2), "weak-inc-2")
    z = dd.dist_perm_stat(2, "strict-inc-2")
    recs = dd.tail_interval_records(y, z, dd.tv_bound_uniform(2, 2))
    assert all(r.ok for r in recs)
    at_zero = [r for r in recs if r.z == 0][0]
    assert at_zero.left_equality  # both upper tails are 1 at the support floor
    at_one = [r for r in recs if r.z == 1][0]
    assert at_one.upper_tail_word == Fraction(3, 4)
    assert at_one.upper_tail_perm == Fraction(1, 2)
