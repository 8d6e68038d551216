from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from incseq.exactarith import (TruncPoly, binomial, compositions,
                               format_fraction, gen_binomial, multinomial,
                               parse_fraction, series_coeff_cyc2,
                               series_coeff_cyc3)


def test_binomial_values():
    assert binomial(5, 2) == 10
    assert binomial(3, 5) == 0
    assert binomial(0, 0) == 1
    assert binomial(-2, 3) == -comb(4, 3)
    assert binomial(-1, 4) == 1


def test_binomial_rejects_negative_k():
    with pytest.raises(ValueError):
        binomial(5, -1)


def test_gen_binomial_values():
    assert gen_binomial(Fraction(-1, 2), 2) == Fraction(3, 8)
    assert gen_binomial(Fraction(1, 2), 1) == Fraction(1, 2)
    for r in (Fraction(7, 3), Fraction(-5, 2), 0, 4):
        assert gen_binomial(r, 0) == 1


rationals = st.fractions(min_value=-8, max_value=8, max_denominator=16)


@given(rationals, st.integers(min_value=1, max_value=12))
def test_gen_binomial_pascal_recurrence(r, k):
    assert gen_binomial(r, k) == gen_binomial(r - 1, k - 1) * Fraction(r) / k


def test_half_integer_identity():
    # C(-1/2, i) = (-1)^i C(2i, i) / 4^i
    for i in range(13):
        assert gen_binomial(Fraction(-1, 2), i) == \
            Fraction((-1) ** i * comb(2 * i, i), 4 ** i)


def test_odd_column_doubling_identity():
    # sum_i C(r+1, 2i+1) C(r-2i, m-i) 2^(2i+1) = C(2r+2, 2m+1)
    for r in range(11):
        for m in range(11):
            lhs = sum(gen_binomial(r + 1, 2 * i + 1) * binomial(r - 2 * i, m - i)
                      * 2 ** (2 * i + 1) for i in range(m + 1))
            assert lhs == binomial(2 * r + 2, 2 * m + 1)


def test_squared_binomial_sum_identity():
    # sum_i C(m+2l-i, 2l) C(l, i)^2 = C(m+l, l)^2
    for m in range(11):
        for l in range(11):
            lhs = sum(binomial(m + 2 * l - i, 2 * l) * binomial(l, i) ** 2
                      for i in range(min(m, l) + 1))
            assert lhs == binomial(m + l, l) ** 2


def test_multinomial():
    assert multinomial(4, [2, 2]) == 6
    assert multinomial(3, [1, 1, 1]) == 6
    assert multinomial(5, [5]) == 1
    with pytest.raises(ValueError):
        multinomial(4, [2, 1])
    with pytest.raises(ValueError):
        multinomial(1, [2, -1])


def test_compositions_examples():
    assert list(compositions(2, 2)) == [(0, 2), (1, 1), (2, 0)]
    assert list(compositions(0, 3)) == [(0, 0, 0)]
    assert sum(1 for _ in compositions(5, 3)) == comb(7, 2)


@given(st.integers(min_value=0, max_value=7), st.integers(min_value=1, max_value=4))
def test_compositions_count_distinct_lex(k, a):
    items = list(compositions(k, a))
    assert len(items) == comb(k + a - 1, a - 1)
    assert len(set(items)) == len(items)
    assert items == sorted(items)
    assert all(len(c) == a and sum(c) == k and min(c) >= 0 for c in items)


def _random_poly(rng, caps):
    p = TruncPoly(caps)
    for e in p.exponents():
        p.set_coeff(e, Fraction(int(rng.integers(-4, 5)), int(rng.integers(1, 4))))
    return p


def test_truncpoly_mul_commutative_associative():
    import numpy as np
    rng = np.random.default_rng(7)
    caps = (3, 2, 2)
    for _ in range(10):
        f, g, h = (_random_poly(rng, caps) for _ in range(3))
        assert f * g == g * f
        assert (f * g) * h == f * (g * h)


def test_truncpoly_one_and_budget():
    caps = (2, 2)
    one = TruncPoly.one(caps)
    import numpy as np
    p = _random_poly(np.random.default_rng(3), caps)
    assert one * p == p
    with pytest.raises(ValueError):
        TruncPoly((100, 100, 100))
    with pytest.raises(IndexError):
        p.coeff(3, 0)


def test_cyc3_series_examples():
    s0 = series_coeff_cyc3(0, (2, 2, 5))
    for m in range(6):
        assert s0.coeff(0, 0, m) == 1
    assert s0.coeff(1, 0, 0) == 1
    s1 = series_coeff_cyc3(1, (2, 2, 2))
    assert s1.coeff(0, 0, 1) == 2


def test_cyc2_series_examples():
    s0 = series_coeff_cyc2(0, (3, 3))
    assert s0.coeff(1, 1) == 4
    for j in range(4):
        assert s0.coeff(0, j) == 1
    s1 = series_coeff_cyc2(1, (2, 2))
    assert s1.coeff(1, 0) == 2


@given(st.fractions(max_denominator=1000))
def test_fraction_roundtrip(x):
    assert parse_fraction(format_fraction(x)) == x


def test_parse_fraction_accepts_integers():
    assert parse_fraction("17") == 17
    assert parse_fraction(" -3/6 ") == Fraction(-1, 2)
