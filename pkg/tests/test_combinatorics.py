from __future__ import annotations

import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kneser_toughness.combinatorics import (
    CascadeRep,
    binomial,
    cascade_decompose,
    ceil_ratio,
    floor_ratio,
    kk_neighborhood_bound,
    shadow_lower_bound,
)
from kneser_toughness.graphs import KneserParams, ksubset_masks


def test_binomial_zero_convention():
    assert binomial(5, 2) == 10
    assert binomial(3, 5) == 0
    assert binomial(4, -1) == 0
    assert binomial(0, 0) == 1


@pytest.mark.parametrize("n", range(0, 25))
def test_binomial_matches_math_comb(n):
    for k in range(-2, n + 3):
        assert binomial(n, k) == (math.comb(n, k) if k >= 0 else 0)


def test_floor_and_ceil_of_negative_ratios():
    assert floor_ratio(Fraction(-7, 2)) == -4
    assert ceil_ratio(Fraction(-7, 2)) == -3
    assert ceil_ratio(Fraction(6, 3)) == 2


def test_cascade_of_129_at_rank_8():
    rep = cascade_decompose(129, 8)
    assert list(rep) == [(10, 8), (9, 7), (8, 6), (6, 5), (5, 4), (4, 3), (3, 2), (2, 1)]
    assert rep.value == 129


def test_cascade_rejects_bad_input():
    with pytest.raises(ValueError):
        cascade_decompose(0, 3)
    with pytest.raises(ValueError):
        cascade_decompose(5, 0)
    with pytest.raises(ValueError):
        CascadeRep(3, ((4, 3), (5, 2)))


def _all_cascades(m: int, rank: int):
    """Every valid binomial expansion of m, found by exhaustive recursion."""
    out = []

    def rec(rest, bottom, max_top, acc):
        if rest == 0:
            out.append(tuple(acc))
            return
        if bottom < 1:
            return
        for top in range(bottom, max_top + 1):
            v = math.comb(top, bottom)
            if v > rest:
                break
            rec(rest - v, bottom - 1, top - 1, acc + [(top, bottom)])

    rec(m, rank, m + rank, [])
    return out


@pytest.mark.parametrize("rank", [1, 2, 3, 4])
def test_cascade_is_the_unique_expansion(rank):
    for m in range(1, 120):
        found = _all_cascades(m, rank)
        assert found == [tuple(cascade_decompose(m, rank))], m


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 10**5), st.integers(1, 12))
def test_cascade_round_trip(m, rank):
    rep = cascade_decompose(m, rank)
    assert rep.value == m
    assert CascadeRep(rep.rank, rep.terms) == rep


def test_cascade_round_trip_exhaustive_small_ranks():
    for rank in (2, 3, 8):
        for m in range(1, 10**5 + 1, 7):
            assert cascade_decompose(m, rank).value == m


def _shadow(family, r):
    out = set()
    for s in family:
        for sub in itertools.combinations(s, len(s) - r):
            out.add(sub)
    return out


@pytest.mark.parametrize("rank,r", [(3, 1), (4, 2), (5, 3), (4, 1)])
def test_shadow_bound_attained_by_colex_initial_segments(rank, r):
    # colex initial segments minimise the shadow, so the bound is exact on them
    sets = [tuple(i for i in range(12) if m >> i & 1) for m in ksubset_masks(12, rank)]
    for q in range(1, 80):
        assert len(_shadow(sets[:q], r)) == shadow_lower_bound(cascade_decompose(q, rank), r)


def test_kk_neighborhood_reference_values():
    assert kk_neighborhood_bound(129, KneserParams(12, 4)) == 329
    assert kk_neighborhood_bound(84, KneserParams(11, 4)) == 203
    assert kk_neighborhood_bound(7, KneserParams(8, 3)) == 26


def test_kk_neighborhood_domain():
    p = KneserParams(8, 3)
    with pytest.raises(ValueError):
        kk_neighborhood_bound(0, p)
    with pytest.raises(ValueError):
        kk_neighborhood_bound(p.ekr + 1, p)


def _neighbourhood(family_masks, n):
    return {m for m in ksubset_masks(n, bin(family_masks[0]).count("1"))
            if any(not (m & f) for f in family_masks)} if family_masks else set()


@pytest.mark.parametrize("n,k", [(7, 3), (8, 3), (9, 4)])
def test_kk_neighborhood_lower_bounds_random_families(n, k):
    import random

    rng = random.Random(n * 31 + k)
    p = KneserParams(n, k)
    masks = ksubset_masks(n, k)
    star = [m for m in masks if m & 1]
    for _ in range(150):
        q = rng.randint(1, p.ekr)
        fam = rng.sample(star, q) if rng.random() < 0.5 else rng.sample(masks, q)
        assert len(_neighbourhood(fam, n)) >= kk_neighborhood_bound(q, p)
