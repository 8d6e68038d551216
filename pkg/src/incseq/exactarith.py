"""Exact integer/rational combinatorics: binomials, compositions, truncated series.

Everything here returns Python ints or ``fractions.Fraction``; no floating
point. These are the scalar building blocks for every closed-form moment in
the package.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
from typing import Iterator, Sequence

RationalLike = int | Fraction

# Dense truncated polynomials refuse tables larger than this many cells.
TRUNCPOLY_CELL_BUDGET = 8192


def binomial(n: int, k: int) -> int:
    """C(n, k) for integer n and k >= 0; 0 when 0 <= n < k.

    Negative ``n`` uses the generalized-binomial embedding
    C(n, k) = (-1)^k C(k - n - 1, k), which is always an integer.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if n < 0:
        return (-1) ** k * comb(k - n - 1, k)
    return comb(n, k) if k <= n else 0


def gen_binomial(r: RationalLike, k: int) -> Fraction:
    """Generalized binomial C(r, k) = r(r-1)...(r-k+1)/k! for rational r."""
    if k < 0:
        raise ValueError("k must be non-negative")
    top = Fraction(1)
    r = Fraction(r)
    for i in range(k):
        top *= r - i
    return top / factorial(k)


def multinomial(n: int, parts: Sequence[int]) -> int:
    """n! / (parts_1! ... parts_a!); parts must be non-negative and sum to n."""
    if any(p < 0 for p in parts):
        raise ValueError("parts must be non-negative")
    if sum(parts) != n:
        raise ValueError(f"parts sum to {sum(parts)}, expected {n}")
    out = factorial(n)
    for p in parts:
        out //= factorial(p)
    return out


def compositions(k: int, a: int) -> Iterator[tuple[int, ...]]:
    """All a-tuples of non-negative integers summing to k, lexicographically.

    Yields exactly C(k+a-1, a-1) tuples; generated lazily so nested scans
    stay O(a) in memory.
    """
    if a < 1:
        raise ValueError("a must be >= 1")
    if k < 0:
        raise ValueError("k must be >= 0")
    if a == 1:
        yield (k,)
        return
    for first in range(k + 1):
        for rest in compositions(k - first, a - 1):
            yield (first,) + rest


class TruncPoly:
    """Dense multivariate polynomial truncated to per-variable degree caps.

    Coefficients are exact rationals stored in a flat list indexed by mixed
    radix over ``caps``; any product term falling outside the caps is
    discarded, so multiplication is closed on the truncated index set.
    """

    __slots__ = ("caps", "coeffs")

    def __init__(self, caps: tuple[int, ...]):
        if not caps or len(caps) > 3:
            raise ValueError("1 to 3 variables supported")
        if any(c < 0 for c in caps):
            raise ValueError("caps must be non-negative")
        cells = 1
        for c in caps:
            cells *= c + 1
        if cells > TRUNCPOLY_CELL_BUDGET:
            raise ValueError(
                f"dense table of {cells} cells exceeds budget {TRUNCPOLY_CELL_BUDGET}")
        self.caps = tuple(caps)
        self.coeffs = [Fraction(0)] * cells

    def _index(self, expo: tuple[int, ...]) -> int:
        idx = 0
        for e, c in zip(expo, self.caps):
            if e < 0 or e > c:
                raise IndexError(f"exponent {expo} outside caps {self.caps}")
            idx = idx * (c + 1) + e
        return idx

    def exponents(self) -> Iterator[tuple[int, ...]]:
        ranges = [range(c + 1) for c in self.caps]
        if len(self.caps) == 1:
            for i in ranges[0]:
                yield (i,)
        elif len(self.caps) == 2:
            for i in ranges[0]:
                for j in ranges[1]:
                    yield (i, j)
        else:
            for i in ranges[0]:
                for j in ranges[1]:
                    for m in ranges[2]:
                        yield (i, j, m)

    def coeff(self, *expo: int) -> Fraction:
        return self.coeffs[self._index(expo)]

    def set_coeff(self, expo: tuple[int, ...], value: RationalLike) -> None:
        self.coeffs[self._index(expo)] = Fraction(value)

    @classmethod
    def one(cls, caps: tuple[int, ...]) -> "TruncPoly":
        p = cls(caps)
        p.set_coeff((0,) * len(caps), 1)
        return p

    def __mul__(self, other: "TruncPoly") -> "TruncPoly":
        if self.caps != other.caps:
            raise ValueError("cap mismatch")
        out = TruncPoly(self.caps)
        for e1 in self.exponents():
            c1 = self.coeffs[self._index(e1)]
            if c1 == 0:
                continue
            for e2 in other.exponents():
                c2 = other.coeffs[other._index(e2)]
                if c2 == 0:
                    continue
                tgt = tuple(x + y for x, y in zip(e1, e2))
                if all(t <= c for t, c in zip(tgt, self.caps)):
                    out.coeffs[out._index(tgt)] += c1 * c2
        return out

    def pow(self, exponent: int) -> "TruncPoly":
        if exponent < 0:
            raise ValueError("exponent must be >= 0")
        out = TruncPoly.one(self.caps)
        for _ in range(exponent):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, TruncPoly) and self.caps == other.caps
                and self.coeffs == other.coeffs)


def _cyc3_base(caps: tuple[int, int, int]) -> TruncPoly:
    # sum_{i,j,m} C(i+j,i) C(m+i,m) C(m+j,m) x^i y^j z^m
    p = TruncPoly(caps)
    for (i, j, m) in p.exponents():
        p.set_coeff((i, j, m), comb(i + j, i) * comb(m + i, m) * comb(m + j, m))
    return p


def _cyc2_base(caps: tuple[int, int]) -> TruncPoly:
    # sum_{i,j} C(i+j,i)^2 x^i y^j
    p = TruncPoly(caps)
    for (i, j) in p.exponents():
        p.set_coeff((i, j), comb(i + j, i) ** 2)
    return p


def series_coeff_cyc3(t: int, caps: tuple[int, int, int]) -> TruncPoly:
    """(t+1)-th power of the 3-cycle binomial series, truncated to ``caps``.

    Independent oracle for the closed-form coefficient extraction: query the
    result with ``.coeff(i, j, m)``.
    """
    if t < 0:
        raise ValueError("t must be >= 0")
    return _cyc3_base(caps).pow(t + 1)


def series_coeff_cyc2(t: int, caps: tuple[int, int]) -> TruncPoly:
    """(t+1)-th power of the 2-cycle binomial series, truncated to ``caps``."""
    if t < 0:
        raise ValueError("t must be >= 0")
    return _cyc2_base(caps).pow(t + 1)


def format_fraction(x: RationalLike) -> str:
    """Serialize a rational as ``num/den`` in ASCII decimal."""
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def parse_fraction(s: str) -> Fraction:
    """Inverse of :func:`format_fraction`; also accepts bare integers."""
    s = s.strip()
    if "/" in s:
        num, den = s.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(s))
