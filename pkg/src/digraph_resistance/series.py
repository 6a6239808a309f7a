"""Exact finite-series identities used by the tree-resistance closed form.

Everything here is exact: integers and :class:`fractions.Fraction`.  Each
catalogued identity yields ``(lhs, rhs)`` where ``lhs`` is summed term by
term and ``rhs`` is the closed form.  Empty sums are zero and
``binomial(n, k)`` is zero outside ``0 <= k <= n``.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence

from .errors import OutOfValidityRangeError


def binomial(n: int, k: int) -> int:
    """C(n, k) by the multiplicative formula; 0 when k < 0 or k > n."""
    if n < 0:
        raise ValueError(f"binomial needs n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    k = min(k, n - k)
    c = 1
    for i in range(1, k + 1):
        c = c * (n - k + i) // i
    return c


def two(e: int) -> Fraction:
    """Exact 2**e for any integer e."""
    return Fraction(2) ** e


def _floor_half(x: int) -> int:
    return x // 2


# --------------------------------------------------------------------------
# identity catalog


class IdentityId(enum.Enum):
    SumInt = "SumInt"
    SumIntSq = "SumIntSq"
    SumTwos = "SumTwos"
    SumIntTwos = "SumIntTwos"
    SumIntSqTwos = "SumIntSqTwos"
    BinSumNM = "BinSumNM"
    BinSumNMK = "BinSumNMK"
    BinEvenSum = "BinEvenSum"
    BinOddSum = "BinOddSum"
    BinEvenSumI = "BinEvenSumI"
    BinOddSumI = "BinOddSumI"
    IEvenEvenSum4 = "IEvenEvenSum4"
    IEvenOddSum = "IEvenOddSum"
    IEvenOddSum4 = "IEvenOddSum4"
    IOddEvenSum = "IOddEvenSum"
    IOddOddSum = "IOddOddSum"
    I2Sum1 = "I2Sum1"
    I2Sum2 = "I2Sum2"
    I2Sum3 = "I2Sum3"
    ManipOdd = "ManipOdd"
    ManipEven = "ManipEven"
    PascalRule = "PascalRule"
    BinomialFormula = "BinomialFormula"


@dataclass(frozen=True)
class Identity:
    id: IdentityId
    params: tuple[str, ...]
    valid: Callable[..., bool]
    lhs: Callable[..., Fraction]
    rhs: Callable[..., Fraction]
    grid: Callable[["SweepBounds"], Iterable[tuple]]
    validity: str


def _i2sum(p_hi: int, k_hi: Callable[[int], int]) -> Fraction:
    return sum((i * two(-k) * binomial(k + 2, 2 * i + 1)
                for i in range(1, p_hi + 1) for k in range(2 * i - 1, k_hi(i) + 1)), Fraction(0))


def _manip_odd(n: int, p: int) -> tuple[Fraction, Fraction]:
    lhs = sum((i * two(-k) * binomial(n + k + 3, n + 2 * i + 2)
               for i in range(1, p + 2) for k in range(2 * i - 1, 2 * p + 2)), Fraction(0))
    rhs = sum((i * two(1 - k) * binomial(n + k + 2, n + 2 * i + 1)
               for i in range(1, p + 2) for k in range(2 * i - 1, 2 * p + 2)), Fraction(0))
    rhs -= two(-2 * p - 1) * sum(i * binomial(n + 2 * p + 4, n + 2 * i + 2) for i in range(1, p + 2))
    return lhs, rhs


def _manip_even(n: int, p: int) -> tuple[Fraction, Fraction]:
    lhs = sum((i * two(-k) * binomial(n + k + 3, n + 2 * i + 2)
               for i in range(1, p + 1) for k in range(2 * i - 1, 2 * p + 1)), Fraction(0))
    rhs = sum((i * two(1 - k) * binomial(n + k + 2, n + 2 * i + 1)
               for i in range(1, p + 1) for k in range(2 * i - 1, 2 * p + 1)), Fraction(0))
    rhs -= two(-2 * p) * sum(i * binomial(n + 2 * p + 3, n + 2 * i + 2) for i in range(1, p + 1))
    return lhs, rhs


def _binomial_formula_lhs(n: int, x: Fraction, y: Fraction) -> Fraction:
    return Fraction(x + y) ** n


def _binomial_formula_rhs(n: int, x: Fraction, y: Fraction) -> Fraction:
    return sum((binomial(n, i) * Fraction(x) ** i * Fraction(y) ** (n - i) for i in range(n + 1)), Fraction(0))


BINOMIAL_FORMULA_POINTS = tuple(Fraction(v) for v in ("-2", "-1", "-1/2", "0", "1/3", "1", "3/2", "2"))


@dataclass(frozen=True)
class SweepBounds:
    """Upper limits of the verification grids, one field per identity family."""

    sums_n: int = 40
    binsum_n: int = 25
    binsum_m: int = 25
    standard_n: int = 30
    special_p: int = 15
    manip_n: int = 15
    manip_p: int = 10
    pascal_n: int = 31
    binform_n: int = 12
    gh_n: int = 15
    gh_p: int = 8
    s_max: int = 10


def _sums_grid(b):
    return ((n,) for n in range(1, b.sums_n + 1))


def _standard_grid(lo):
    return lambda b: ((n,) for n in range(lo, b.standard_n + 1))


def _special_grid(b):
    return ((p,) for p in range(0, b.special_p + 1))


def _manip_grid(b):
    return itertools.product(range(0, b.manip_n + 1), range(0, b.manip_p + 1))


CATALOG: dict[IdentityId, Identity] = {
    ident.id: ident
    for ident in [
        Identity(IdentityId.SumInt, ("n",), lambda n: n > 0,
                 lambda n: Fraction(sum(range(1, n + 1))),
                 lambda n: Fraction(n * (n + 1), 2),
                 _sums_grid, "n > 0"),
        Identity(IdentityId.SumIntSq, ("n",), lambda n: n > 0,
                 lambda n: Fraction(sum(k * k for k in range(1, n + 1))),
                 lambda n: Fraction(n * (n + 1) * (2 * n + 1), 6),
                 _sums_grid, "n > 0"),
        Identity(IdentityId.SumTwos, ("n",), lambda n: n > 0,
                 lambda n: sum((two(-k) for k in range(1, n + 1)), Fraction(0)),
                 lambda n: 1 - two(-n),
                 _sums_grid, "n > 0"),
        Identity(IdentityId.SumIntTwos, ("n",), lambda n: n > 0,
                 lambda n: sum((k * two(-k) for k in range(1, n + 1)), Fraction(0)),
                 lambda n: 2 - (n + 2) * two(-n),
                 _sums_grid, "n > 0"),
        Identity(IdentityId.SumIntSqTwos, ("n",), lambda n: n > 0,
                 lambda n: sum((k * k * two(-k) for k in range(1, n + 1)), Fraction(0)),
                 lambda n: 6 - (n * n + 4 * n + 6) * two(-n),
                 _sums_grid, "n > 0"),
        Identity(IdentityId.BinSumNM, ("n", "m"), lambda n, m: n > 0 and m >= 0,
                 lambda n, m: Fraction(sum(binomial(m + i, m + 1) for i in range(1, n + 1))),
                 lambda n, m: Fraction(binomial(n + m + 1, m + 2)),
                 lambda b: itertools.product(range(1, b.binsum_n + 1), range(0, b.binsum_m + 1)), "n > 0, m >= 0"),
        Identity(IdentityId.BinSumNMK, ("n", "m", "k"), lambda n, m, k: n > 0 and m >= 0 and 0 <= k <= m,
                 lambda n, m, k: Fraction(sum(binomial(m + i, k + i) for i in range(1, n + 1))),
                 lambda n, m, k: Fraction(binomial(n + m + 1, n + k) - binomial(m + 1, k)),
                 lambda b: ((n, m, k) for n in range(1, b.binsum_n + 1) for m in range(0, b.binsum_m + 1)
                            for k in range(0, m + 1)),
                 "n > 0, m >= 0, 0 <= k <= m"),
        Identity(IdentityId.BinEvenSum, ("n",), lambda n: n > 0,
                 lambda n: Fraction(sum(binomial(n, 2 * i) for i in range(_floor_half(n) + 1))),
                 lambda n: two(n - 1),
                 _standard_grid(1), "n > 0"),
        Identity(IdentityId.BinOddSum, ("n",), lambda n: n > 0,
                 lambda n: Fraction(sum(binomial(n, 2 * i + 1) for i in range(_floor_half(n - 1) + 1))),
                 lambda n: two(n - 1),
                 _standard_grid(1), "n > 0"),
        Identity(IdentityId.BinEvenSumI, ("n",), lambda n: n > 1,
                 lambda n: Fraction(sum(2 * i * binomial(n, 2 * i) for i in range(_floor_half(n) + 1))),
                 lambda n: n * two(n - 2),
                 _standard_grid(2), "n > 1"),
        Identity(IdentityId.BinOddSumI, ("n",), lambda n: n > 1,
                 lambda n: Fraction(sum((2 * i + 1) * binomial(n, 2 * i + 1) for i in range(_floor_half(n - 1) + 1))),
                 lambda n: n * two(n - 2),
                 _standard_grid(2), "n > 1"),
        Identity(IdentityId.IEvenEvenSum4, ("p",), lambda p: p >= 0,
                 lambda p: Fraction(sum(i * binomial(2 * p + 4, 2 * i + 2) for i in range(1, p + 2))),
                 lambda p: p * two(2 * p + 2) + 1,
                 _special_grid, "p >= 0"),
        Identity(IdentityId.IEvenOddSum, ("p",), lambda p: p >= 0,
                 lambda p: Fraction(sum(i * binomial(2 * p + 2, 2 * i + 1) for i in range(1, p + 1))),
                 lambda p: p * two(2 * p),
                 _special_grid, "p >= 0"),
        Identity(IdentityId.IEvenOddSum4, ("p",), lambda p: p >= 0,
                 lambda p: Fraction(sum(i * binomial(2 * p + 4, 2 * i + 1) for i in range(1, p + 2))),
                 lambda p: (p + 1) * two(2 * p + 2),
                 _special_grid, "p >= 0"),
        Identity(IdentityId.IOddEvenSum, ("p",), lambda p: p >= 0,
                 lambda p: Fraction(sum(i * binomial(2 * p + 3, 2 * i + 2) for i in range(1, p + 1))),
                 lambda p: (2 * p - 1) * two(2 * p) + 1,
                 _special_grid, "p >= 0"),
        Identity(IdentityId.IOddOddSum, ("p",), lambda p: p >= 0,
                 lambda p: Fraction(sum(i * binomial(2 * p + 3, 2 * i + 1) for i in range(1, p + 1))),
                 lambda p: (2 * p + 1) * two(2 * p) - p - 1,
                 _special_grid, "p >= 0"),
        Identity(IdentityId.I2Sum1, ("p",), lambda p: p >= 0,
                 lambda p: _i2sum(p, lambda i: 2 * p),
                 lambda p: Fraction(p * p) + Fraction(p, 2),
                 _special_grid, "p >= 0"),
        Identity(IdentityId.I2Sum2, ("p",), lambda p: p >= 0,
                 lambda p: _i2sum(p, lambda i: 2 * p - 1),
                 lambda p: Fraction(p * p) - Fraction(p, 2),
                 _special_grid, "p >= 0"),
        Identity(IdentityId.I2Sum3, ("p",), lambda p: p >= 0,
                 lambda p: _i2sum(p + 1, lambda i: 2 * p + 1),
                 lambda p: Fraction(p * p) + Fraction(3 * p, 2) + Fraction(1, 2),
                 _special_grid, "p >= 0"),
        Identity(IdentityId.ManipOdd, ("n", "p"), lambda n, p: n >= 0 and p >= 0,
                 lambda n, p: _manip_odd(n, p)[0],
                 lambda n, p: _manip_odd(n, p)[1],
                 _manip_grid, "n >= 0, p >= 0"),
        Identity(IdentityId.ManipEven, ("n", "p"), lambda n, p: n >= 0 and p >= 0,
                 lambda n, p: _manip_even(n, p)[0],
                 lambda n, p: _manip_even(n, p)[1],
                 _manip_grid, "n >= 0, p >= 0"),
        Identity(IdentityId.PascalRule, ("n", "k"), lambda n, k: 1 <= k <= n - 1,
                 lambda n, k: Fraction(binomial(n, k)),
                 lambda n, k: Fraction(binomial(n - 1, k) + binomial(n - 1, k - 1)),
                 lambda b: ((n, k) for n in range(2, b.pascal_n + 1) for k in range(1, n)), "1 <= k <= n - 1"),
        Identity(IdentityId.BinomialFormula, ("n", "x", "y"), lambda n, x, y: n >= 0,
                 _binomial_formula_lhs, _binomial_formula_rhs,
                 lambda b: itertools.product(range(0, b.binform_n + 1), BINOMIAL_FORMULA_POINTS, BINOMIAL_FORMULA_POINTS),
                 "n >= 0"),
    ]
}


def eval_identity(identity: IdentityId | str, *params) -> tuple[Fraction, Fraction]:
    """Return ``(lhs, rhs)`` for one identity at one parameter tuple."""
    ident = CATALOG[IdentityId(identity)]
    if len(params) != len(ident.params):
        raise OutOfValidityRangeError(f"{ident.id.value} takes parameters {ident.params}, got {params}")
    if not ident.valid(*params):
        raise OutOfValidityRangeError(f"{ident.id.value}{params} outside validity range ({ident.validity})")
    return Fraction(ident.lhs(*params)), Fraction(ident.rhs(*params))


def identity_grid(identity: IdentityId | str, bounds: SweepBounds | None = None) -> Iterator[tuple]:
    return iter(CATALOG[IdentityId(identity)].grid(bounds or SweepBounds()))


def binomial_derivative_sides(n: int, x: Fraction) -> tuple[Fraction, Fraction]:
    """Both sides of ``n (1+x)^(n-1) = Σ_i i C(n,i) x^(i-1)`` for ``n >= 1``."""
    if n < 1:
        raise OutOfValidityRangeError("derivative form needs n >= 1")
    x = Fraction(x)
    lhs = n * (1 + x) ** (n - 1)
    rhs = sum((i * binomial(n, i) * x ** (i - 1) for i in range(1, n + 1)), Fraction(0))
    return lhs, rhs


# --------------------------------------------------------------------------
# the three composite expressions behind the tree-resistance induction


def g_expression(n: int, p: int) -> Fraction:
    """Odd-step remainder; identically zero for all n, p >= 0."""
    if n < 0 or p < 0:
        raise OutOfValidityRangeError("g_expression needs n, p >= 0")
    c = n + 2 * p + 2
    total = Fraction(4 * p * p + 6 * p + 2, c) + 4 * p
    total += (4 * p * p + 4 * n * p + 4 * n + 10 * p + 6) * two(1 - n)
    total += two(-2 * p)
    total += two(-n - 2 * p) * sum(
        i * (2 * binomial(n + 2 * p + 4, n + 2 * i + 1) - binomial(n + 2 * p + 4, n + 2 * i + 2)
             - (2 * n + 4 * p + 6) * binomial(2 * p + 4, 2 * i + 1))
        for i in range(1, p + 2))
    ratio = Fraction(n + 2 * p + 1, c)
    total += two(2 - n) * sum(
        (i * two(-k) * (ratio * binomial(n + k + 2, n + 2 * i + 1) - binomial(n + k + 2, n + 2 * i)
                        + binomial(k + 3, 2 * i + 1))
         for i in range(1, p + 2) for k in range(2 * i - 1, 2 * p + 2)), Fraction(0))
    ratio = Fraction(2 * n + 4 * p + 6, c)
    total += two(-2 * p) * sum(
        (i * two(-k) * (binomial(k + 2 * p + 4, k + 2 * i + 2) - ratio * binomial(k + 2 * p + 3, k + 2 * i + 1))
         for i in range(1, p + 2) for k in range(1, n + 1)), Fraction(0))
    return total


def h_expression(n: int, p: int) -> Fraction:
    """Even-step remainder; identically zero for all n, p >= 0."""
    if n < 0 or p < 0:
        raise OutOfValidityRangeError("h_expression needs n, p >= 0")
    c = n + 2 * p + 1
    total = Fraction(4 * p * p + 2 * p, c) + 4 * p - 2
    total += (4 * p * p + 4 * n * p + 2 * n + 6 * p + 2) * two(1 - n)
    total += two(1 - 2 * p)
    total -= (4 * p * p + 2 * n * p + 2 * n + 6 * p + 2) * two(1 - n - 2 * p)
    total += two(1 - n - 2 * p) * sum(
        i * (2 * binomial(n + 2 * p + 3, n + 2 * i + 1) - binomial(n + 2 * p + 3, n + 2 * i + 2)
             - (2 * n + 4 * p + 4) * binomial(2 * p + 3, 2 * i + 1))
        for i in range(1, p + 1))
    ratio = Fraction(n + 2 * p, c)
    total += two(2 - n) * sum(
        (i * two(-k) * (ratio * binomial(n + k + 2, n + 2 * i + 1) - binomial(n + k + 2, n + 2 * i)
                        + binomial(k + 3, 2 * i + 1))
         for i in range(1, p + 1) for k in range(2 * i - 1, 2 * p + 1)), Fraction(0))
    ratio = Fraction(2 * n + 4 * p + 4, c)
    total += two(1 - 2 * p) * sum(
        (i * two(-k) * (binomial(k + 2 * p + 3, k + 2 * i + 2) - ratio * binomial(k + 2 * p + 2, k + 2 * i + 1))
         for i in range(1, p + 1) for k in range(1, n + 1)), Fraction(0))
    return total


def _tree_tail(a: int, b: int) -> Fraction:
    """``Σ_{i=1}^{⌊(b+1)/2⌋} i C(a+b+2, a+2i+1)``, the binomial part of the tree closed form."""
    return Fraction(sum(i * binomial(a + b + 2, a + 2 * i + 1) for i in range(1, (b + 1) // 2 + 1)))


def s_expression(n: int, ell: int) -> tuple[Fraction, Fraction]:
    """The recurrence right-hand side with every prior resistance replaced by the
    closed form, built from its six sub-sums, alongside its simplified form."""
    if n < 1 or ell < 1:
        raise OutOfValidityRangeError("s_expression needs n, ell >= 1")
    c = n + ell + 1
    w_row = lambda k: 4 - Fraction(2, c) - two(k - ell)  # noqa: E731
    w_col = lambda k: Fraction(1, c) - two(k - n)  # noqa: E731
    w_grid = lambda k, j: two(1 + k - n) - two(j - ell)  # noqa: E731

    s1 = sum((w_row(k) * (n - k) for k in range(1, ell + 1)), Fraction(0))
    s2 = sum((w_row(k) * two(1 - n - k) * _tree_tail(n, k) for k in range(1, ell + 1)), Fraction(0))
    s3 = sum((w_col(k) * (k - ell) for k in range(1, n + 1)), Fraction(0))
    s4 = sum((w_col(k) * two(2 - k - ell) * _tree_tail(k, ell) for k in range(1, n + 1)), Fraction(0))
    s5 = sum((w_grid(k, j) * (k - j) for k in range(1, n + 1) for j in range(1, ell + 1)), Fraction(0))
    s6 = sum((w_grid(k, j) * two(1 - k - j) * _tree_tail(k, j)
              for k in range(1, n + 1) for j in range(1, ell + 1)), Fraction(0))

    definition = (Fraction(-3 * n * n + 3 * ell * ell - 2 * n * ell - n + 5 * ell + 2, 2 * c * c)
                  + Fraction(ell * ell + 2 * n * ell + 2 * n + 3 * ell, c) * two(-n)
                  + Fraction(n * n + n + 2, 2 * c) * two(-ell)
                  + s1 / (2 * c) + s2 / c - Fraction(n + ell + 2, c) * s3
                  - Fraction(n + ell + 2, c) * s4 - s5 / (2 * c) - s6 / c)

    top = (ell + 1) // 2
    bracket = Fraction(ell * ell + ell, c) + 2 * ell - 2 + two(1 - ell)
    bracket += (ell * ell + 2 * n * ell + 2 * n + 3 * ell + 2) * two(1 - n)
    ratio = Fraction(2 * n + 2 * ell + 4, c)
    bracket += two(1 - ell) * sum(
        (i * two(-k) * (binomial(k + ell + 3, k + 2 * i + 2) - ratio * binomial(k + ell + 2, k + 2 * i + 1))
         for i in range(1, top + 1) for k in range(1, n + 1)), Fraction(0))
    bracket += two(1 - n - ell) * sum(
        i * (2 * binomial(n + ell + 3, n + 2 * i + 1) - binomial(n + ell + 3, n + 2 * i + 2)
             - (2 * n + 2 * ell + 4) * binomial(ell + 3, 2 * i + 1))
        for i in range(1, top + 1))
    ratio = Fraction(n + ell, c)
    bracket += two(2 - n) * sum(
        (i * two(-k) * (ratio * binomial(n + k + 2, n + 2 * i + 1) - binomial(n + k + 2, n + 2 * i)
                        + binomial(k + 3, 2 * i + 1))
         for i in range(1, top + 1) for k in range(2 * i - 1, ell + 1)), Fraction(0))
    simplified = 2 * (n - ell - 1) + two(2 - n - ell) * Fraction(
        sum(i * binomial(n + ell + 3, n + 2 * i + 1) for i in range(1, top + 1))) + bracket / c
    return definition, simplified
