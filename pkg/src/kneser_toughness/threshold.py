"""Certified rational bounds for the large-n threshold in k."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .combinatorics import binomial, floor_ratio

DEFAULT_PRECISION = 64
PRECISION_CAP = 4096


class UndecidedComparison(ArithmeticError):
    pass


def ln2_bounds(terms: int) -> tuple[Fraction, Fraction]:
    """``ln 2 = sum 1/(j 2^j)``; the tail after ``terms`` terms is below ``1/((terms+1) 2^terms)``."""
    s = Fraction(0)
    for j in range(1, terms + 1):
        s += Fraction(1, j * 2**j)
    return s, s + Fraction(1, (terms + 1) * 2**terms)


def _iroot_floor(x: int, r: int) -> int:
    lo, hi = 0, 1
    while hi**r <= x:
        hi *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if mid**r <= x:
            lo = mid
        else:
            hi = mid
    return lo


def root2_bounds(degree: int, bits: int) -> tuple[Fraction, Fraction]:
    """Dyadic bracket of ``2 ** (1/degree)`` of width ``2**-bits``."""
    a = _iroot_floor(2 * 2 ** (bits * degree), degree)
    return Fraction(a, 2**bits), Fraction(a + 1, 2**bits)


@dataclass(frozen=True)
class QuadraticThreshold:
    k: int
    lower: Fraction
    upper: Fraction
    min_n: int
    chain_rhs_upper: Fraction | None
    chain_holds: bool
    precision: int
    escalations: int

    @property
    def midpoint(self) -> float:
        return float((self.lower + self.upper) / 2)


def _quadratic_interval(k: int, precision: int) -> tuple[Fraction, Fraction]:
    lo, hi = ln2_bounds(precision)
    coeff = (2 * k - 1) * (k - 1)  # 2k^2 - 3k + 1
    return Fraction(coeff) / hi + 2 * k, Fraction(coeff) / lo + 2 * k


def _chain_rhs_interval(k: int, precision: int) -> tuple[Fraction, Fraction | None]:
    x_lo, x_hi = root2_bounds(k - 1, precision)
    # (2k x - 1)/(x - 1) = 2k + (2k-1)/(x-1) decreases in x; None = unbounded above
    upper = None if x_lo <= 1 else 2 * k + Fraction(2 * k - 1) / (x_lo - 1)
    return 2 * k + Fraction(2 * k - 1) / (x_hi - 1), upper


def quadratic_threshold(k: int, precision: int = DEFAULT_PRECISION,
                        precision_cap: int = PRECISION_CAP) -> QuadraticThreshold:
    """Bracket ``(2k^2 - 3k + 1)/ln 2 + 2k`` and decide the least integer above it.

    Precision doubles until both the integer decision and the comparison with
    ``(2^(1/(k-1)) 2k - 1)/(2^(1/(k-1)) - 1)`` are settled.
    """
    if k < 3:
        raise ValueError("threshold is stated for k >= 3")
    escalations = 0
    while True:
        lo, hi = _quadratic_interval(k, precision)
        rhs_lo, rhs_hi = _chain_rhs_interval(k, precision)
        floor_lo = floor_ratio(lo)
        integer_decided = floor_lo == floor_ratio(hi) and lo.denominator != 1
        chain_decided = hi < rhs_lo or (rhs_hi is not None and lo > rhs_hi)
        if integer_decided and chain_decided:
            holds = rhs_hi is not None and lo > rhs_hi
            return QuadraticThreshold(k, lo, hi, floor_lo + 1, rhs_hi, holds,
                                      precision, escalations)
        if precision * 2 > precision_cap:
            raise UndecidedComparison(f"threshold for k={k} undecided at precision {precision}")
        precision *= 2
        escalations += 1


def window_bounds(n: int, k: int) -> tuple[int, int]:
    return binomial(n - k - 1, k - 1) + 1, binomial(n - 1, k - 1) - binomial(n - k - 1, k - 1) + 1


def window_empty_from(k: int, n_max: int) -> int | None:
    """Least ``n0`` with an empty component window for every ``n0 <= n <= n_max``."""
    start = None
    for n in range(2 * k + 1, n_max + 1):
        lo, hi = window_bounds(n, k)
        if lo > hi:
            if start is None:
                start = n
        else:
            start = None
    return start
