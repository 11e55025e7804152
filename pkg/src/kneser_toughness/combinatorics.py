"""Exact binomial arithmetic, cascade expansions and Kruskal-Katona bounds.

Counts are plain Python ints and ratios are :class:`fractions.Fraction`, so
nothing here ever rounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Iterator

if TYPE_CHECKING:
    from .graphs import KneserParams


def binomial(n: int, k: int) -> int:
    """Binomial coefficient with the zero convention outside ``0 <= k <= n``."""
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def floor_ratio(x: Fraction) -> int:
    return x.numerator // x.denominator


def ceil_ratio(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


@dataclass(frozen=True)
class CascadeRep:
    """``m = C(top_1, rank) + C(top_2, rank-1) + ...`` with strictly decreasing tops."""

    rank: int
    terms: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        prev_top, prev_bottom = None, self.rank + 1
        for top, bottom in self.terms:
            if bottom != prev_bottom - 1 or not top >= bottom >= 1:
                raise ValueError(f"malformed cascade term C({top},{bottom})")
            if prev_top is not None and top >= prev_top:
                raise ValueError("cascade tops must strictly decrease")
            prev_top, prev_bottom = top, bottom

    @property
    def value(self) -> int:
        return sum(binomial(top, bottom) for top, bottom in self.terms)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.terms)

    def __str__(self) -> str:
        return " + ".join(f"C({t},{b})" for t, b in self.terms)


def cascade_decompose(m: int, rank: int) -> CascadeRep:
    """Greedy expansion of ``m`` at the given rank.

    At each bottom ``j`` the largest top with ``C(top, j) <= remainder`` is
    taken; the expansion stops as soon as the remainder hits zero.
    """
    if m < 1:
        raise ValueError("cascade expansion needs m >= 1")
    if rank < 1:
        raise ValueError("cascade rank must be >= 1")
    terms = []
    rest = m
    j = rank
    while rest > 0:
        if j < 1:
            # unreachable for valid input: C(top, 1) = top absorbs any remainder
            raise AssertionError("cascade did not terminate")
        top = j
        while binomial(top + 1, j) <= rest:
            top += 1
        terms.append((top, j))
        rest -= binomial(top, j)
        j -= 1
    return CascadeRep(rank, tuple(terms))


def shadow_lower_bound(rep: CascadeRep, r: int) -> int:
    """Kruskal-Katona lower bound on the ``(rank - r)``-shadow."""
    if not 0 <= r <= rep.rank:
        raise ValueError(f"shadow offset r={r} outside [0, {rep.rank}]")
    return sum(binomial(top, bottom - r) for top, bottom in rep.terms)


def kk_neighborhood_bound(q: int, params: "KneserParams") -> int:
    """Lower bound on ``|N(Q)|`` for an independent set ``Q`` of size ``q`` in K(n,k)."""
    n, k = params.n, params.k
    ekr = binomial(n - 1, k - 1)
    if not 1 <= q <= ekr:
        raise ValueError(f"no independent set of size {q} in K({n},{k}) (EKR bound {ekr})")
    return shadow_lower_bound(cascade_decompose(q, n - k), n - 2 * k)
