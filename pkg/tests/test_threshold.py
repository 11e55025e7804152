from __future__ import annotations

import math
from fractions import Fraction

import pytest

from kneser_toughness.threshold import (
    UndecidedComparison,
    ln2_bounds,
    quadratic_threshold,
    root2_bounds,
    window_bounds,
    window_empty_from,
)


@pytest.mark.parametrize("terms", [4, 10, 30, 60])
def test_ln2_bounds_bracket(terms):
    lo, hi = ln2_bounds(terms)
    assert lo < hi
    assert float(lo) <= math.log(2) <= float(hi)


@pytest.mark.parametrize("degree", [1, 2, 4, 9, 49])
def test_root2_bounds_bracket(degree):
    lo, hi = root2_bounds(degree, 80)
    assert lo**degree <= 2 <= hi**degree
    assert hi - lo == Fraction(1, 2**80)


def test_k5_threshold_decided_without_escalation():
    q = quadratic_threshold(5)
    assert q.escalations == 0
    assert q.min_n == 62
    assert abs(q.midpoint - (36 / math.log(2) + 10)) < 1e-9
    assert q.lower < q.upper


def test_threshold_matches_float_formula():
    for k in range(3, 30):
        q = quadratic_threshold(k)
        expected = 2 / math.log(2) * k * k + (2 - 3 / math.log(2)) * k + 1 / math.log(2)
        assert abs(q.midpoint - expected) < 1e-6
        assert q.min_n == math.floor(expected) + 1


def test_chain_inequality_k5_to_50():
    for k in range(5, 51):
        q = quadratic_threshold(k)
        assert q.chain_holds, k
        assert q.lower > q.chain_rhs_upper


def test_precision_cap_is_enforced():
    with pytest.raises(UndecidedComparison):
        quadratic_threshold(5, precision=2, precision_cap=2)
    with pytest.raises(ValueError):
        quadratic_threshold(2)


def test_escalation_is_counted():
    q = quadratic_threshold(5, precision=2)
    assert q.escalations > 0 and q.min_n == 62


def test_windows():
    assert window_bounds(11, 3) == (22, 25)
    assert window_bounds(12, 4) == (36, 131)
    lo, hi = window_bounds(12, 3)
    assert lo > hi


def test_k3_window_empty_from_12():
    assert window_empty_from(3, 60) == 12
    for n in range(12, 61):
        lo, hi = window_bounds(n, 3)
        assert lo > hi
