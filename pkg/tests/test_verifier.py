from __future__ import annotations

import json
import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kneser_toughness.graphs import KneserParams, brute_force_toughness, build_kneser
from kneser_toughness.verifier import (
    Evidence,
    Inequality,
    Method,
    UnsupportedInstance,
    VerificationFailed,
    ab_system_check,
    ab_system_for,
    balanced_split,
    degree_argument,
    hmp_cell,
    hmp_eliminate,
    hmp_general_k4,
    kk_singleton_eliminate,
    load_certificate,
    recheck_certificate,
    route,
    s_ceiling,
    tk_window,
    verify_toughness,
)

WINDOWS = {(11, 3): (22, 25), (10, 3): (16, 22), (9, 3): (11, 19), (8, 3): (7, 16),
           (12, 4): (36, 131), (11, 4): (21, 101), (10, 4): (11, 75), (9, 4): (5, 53)}


@pytest.mark.parametrize("nk,expected", sorted(WINDOWS.items()))
def test_windows(nk, expected):
    w = tk_window(KneserParams(*nk))
    assert (w.c_low, w.c_high) == expected


def test_window_needs_k3():
    with pytest.raises(ValueError):
        tk_window(KneserParams(5, 2))


def test_inequality_relations():
    assert Inequality("x", 3, ">", 2).holds()
    assert not Inequality("x", 2, ">", 2).holds()
    assert Inequality("x", Fraction(1, 2), "==", Fraction(2, 4)).holds()
    with pytest.raises(ValueError):
        Inequality("x", 1, "=>", 2)


# -- balanced split -----------------------------------------------------------------


def test_balanced_split_examples():
    a, b = balanced_split([1, 2, 3], 3)
    sizes = [1, 2, 3]
    assert min(sum(sizes[i] for i in a), sum(sizes[i] for i in b)) >= 2
    a, b = balanced_split([1, 1, 4], 3)
    assert sorted(a + b) == [0, 1, 2]
    with pytest.raises(ValueError):
        balanced_split([1, 1, 1, 1], 2)
    with pytest.raises(ValueError):
        balanced_split([1, 1], 2)
    with pytest.raises(ValueError):
        balanced_split([0, 4], 2)


def exhaustive_best(sizes):
    total = sum(sizes)
    idx = range(len(sizes))
    return max(min(sum(sizes[i] for i in s), total - sum(sizes[i] for i in s))
               for r in range(len(sizes) + 1) for s in combinations(idx, r))


def test_balanced_split_random_multisets():
    rng = random.Random(2024)
    for _ in range(10_000):
        c = rng.randint(2, 12)
        sizes = [rng.randint(1, rng.choice((2, 5, 30))) for _ in range(c)]
        if sum(sizes) < 2 * c:
            sizes[rng.randrange(c)] += 2 * c - sum(sizes)
        a, b = balanced_split(sizes, c)
        assert sorted(a + b) == list(range(c))
        assert min(sum(sizes[i] for i in a), sum(sizes[i] for i in b)) >= c - 1


@settings(max_examples=150, deadline=None)
@given(st.lists(st.integers(1, 9), min_size=2, max_size=9))
def test_balanced_split_is_optimal(sizes):
    c = len(sizes)
    if sum(sizes) < 2 * c:
        sizes = sizes[:-1] + [sizes[-1] + 2 * c - sum(sizes)]
    a, b = balanced_split(sizes, c)
    got = min(sum(sizes[i] for i in a), sum(sizes[i] for i in b))
    assert got == exhaustive_best(sizes)


# -- elimination methods ------------------------------------------------------------


def test_hmp_k11_3():
    p = KneserParams(11, 3)
    ev = hmp_eliminate(p, (22, 25))
    assert all(e.holds() for e in ev)
    assert s_ceiling(p, 25) == 66
    assert all(e.data["coefficient"] * (e.data["side"]) * (e.data["remaining"] - e.data["side"]) > 209 for e in ev)


def test_hmp_k10_3_printed_instance():
    p = KneserParams(10, 3)
    assert Fraction(1, 8) * 15 * (69 - 15) > 101
    ev = hmp_cell(p, 16)
    assert ev.holds() and ev.data["coefficient"] == Fraction(1, 8)


def test_hmp_printed_quadratics():
    p12, p11 = KneserParams(12, 4), KneserParams(11, 4)
    for c in range(36, 124):
        assert Fraction(7, 375) * (c - 1) * (496 - 3 * c) > 2 * c
        assert hmp_cell(p12, c).holds()
    for c in range(21, 86):
        assert Fraction(1, 54) * (c - 1) * (331 - Fraction(11, 4) * c) > Fraction(7, 4) * c
        assert hmp_cell(p11, c).holds()


def test_hmp_precondition_checked_not_assumed():
    # past c = 123 the balanced split no longer applies in K(12,4)
    ev = hmp_cell(KneserParams(12, 4), 124)
    assert not ev.holds()
    assert ev.failures()[0].label.startswith("balanced split applies")
    with pytest.raises(VerificationFailed) as err:
        hmp_eliminate(KneserParams(12, 4), (120, 129))
    assert err.value.cell == (124, 124)


def test_hmp_alone_does_not_close_the_k7_3_window():
    p = KneserParams(7, 3)
    assert hmp_cell(p, 4).holds()
    assert not all(hmp_cell(p, c).holds() for c in tk_window(p))


@pytest.mark.parametrize("n", range(13, 61))
def test_general_k4_bound(n):
    assert hmp_general_k4(KneserParams(n, 4)).holds()


def test_general_k4_needs_n13():
    assert not hmp_general_k4(KneserParams(12, 4)).holds()
    with pytest.raises(ValueError):
        hmp_general_k4(KneserParams(13, 3))


def test_ab_system_k8_3():
    p = KneserParams(8, 3)
    rep15, ev15 = ab_system_for(p, 15)
    rep16, ev16 = ab_system_for(p, 16)
    assert (rep15.budget, rep15.coeffs, rep15.a_max) == (221, (10, 18, 26), 6)
    # KK(8) = 29 > 26 already caps a at 7; the looser box a <= 8 is infeasible too
    assert (rep16.budget, rep16.a_max) == (222, 7)
    assert not rep15.feasible and not rep16.feasible
    assert not ab_system_check(16, 222, (10, 18, 26), 8).feasible
    assert ev15.holds() and ev16.holds()


def test_ab_system_negative_control():
    rep = ab_system_check(15, 400, (10, 18, 26), 6)
    assert rep.feasible and (6, 9) in rep.solutions


def test_ab_system_brute_force_oracle():
    rng = random.Random(7)
    for _ in range(200):
        c, budget, a_max = rng.randint(1, 15), rng.randint(0, 400), rng.randint(0, 15)
        coeffs = tuple(rng.randint(1, 30) for _ in range(3))
        rep = ab_system_check(c, budget, coeffs, a_max)
        naive = {(a, b) for a in range(c + 1) for b in range(c + 1)
                 if a + b <= c and a <= a_max and coeffs[0] * a + coeffs[1] * b + coeffs[2] * (c - a - b) <= budget}
        assert set(rep.solutions) == naive


def test_degree_argument_k11_4():
    p = KneserParams(11, 4)
    for c in range(86, 102):
        ev = degree_argument(p, c)
        assert ev.holds()
        assert ev.data["independentSet"] >= 94
    last = degree_argument(p, 101)
    assert last.inequalities[-1].lhs >= 203 and last.inequalities[-1].rhs < 177
    with pytest.raises(ValueError):
        degree_argument(p, 85)


def test_kk_singleton_k12_4():
    p = KneserParams(12, 4)
    ev = kk_singleton_eliminate(p, 130)
    assert ev.holds()
    assert ev.inequalities[-1].lhs == 329 and ev.inequalities[-1].rhs <= 262
    assert kk_singleton_eliminate(p, 131).holds()
    # too few components to force singletons
    assert not kk_singleton_eliminate(p, 110).holds()


def test_kk_singleton_k8_3_route():
    ev = kk_singleton_eliminate(KneserParams(8, 3), 15, non_singleton_allowance=0)
    # seven singletons already force 26 neighbours against |S| <= 25
    from kneser_toughness.combinatorics import kk_neighborhood_bound
    assert kk_neighborhood_bound(7, KneserParams(8, 3)) == 26 > 25
    assert ev.holds()


# -- routing and certificates -------------------------------------------------------


def test_routing_covers_windows():
    for k, ns in ((3, range(7, 13)), (4, range(9, 25))):
        for n in ns:
            p = KneserParams(n, k)
            w = tk_window(p)
            for c in w:
                route(p, c)


def test_route_names():
    assert route(KneserParams(12, 4), 130) is Method.KK_SINGLETON
    assert route(KneserParams(11, 4), 85) is Method.HMP
    assert route(KneserParams(7, 3), 6) is Method.PARTITION_SEARCH


def test_unsupported_instances():
    with pytest.raises(UnsupportedInstance):
        verify_toughness(KneserParams(11, 5))
    with pytest.raises(UnsupportedInstance):
        verify_toughness(KneserParams(61, 4))
    with pytest.raises(UnsupportedInstance):
        verify_toughness(KneserParams(7, 2))


def test_k5_with_empty_window_is_certified():
    from kneser_toughness.threshold import window_empty_from
    n = window_empty_from(5, 200)
    cert = verify_toughness(KneserParams(n, 5), max_n=200)
    assert cert.toughness == Fraction(n - 5, 5) and cert.window.empty


def test_rerouting_a_cell_to_a_failing_method_refuses_the_certificate():
    p = KneserParams(12, 4)
    routing = [(36, 129, Method.HMP), (130, 131, Method.KK_SINGLETON)]
    with pytest.raises(VerificationFailed) as err:
        verify_toughness(p, routing=routing)
    assert err.value.cell == (124, 124)


def test_gap_in_routing_is_refused():
    p = KneserParams(11, 3)
    with pytest.raises(VerificationFailed):
        verify_toughness(p, routing=[(22, 24, Method.HMP)])


@pytest.mark.parametrize("n,k", [(7, 3), (8, 3), (9, 4), (12, 4)])
def test_certificate_round_trip(n, k):
    p = KneserParams(n, k)
    cert = verify_toughness(p)
    text = cert.to_json()
    obj = json.loads(text)
    assert list(obj) == ["params", "toughness", "window", "evidence", "witnessCut", "assumptions",
                         "caps", "toolVersion"]
    assert obj["toughness"] == {"num": str(cert.toughness.numerator), "den": str(cert.toughness.denominator)}
    again = load_certificate(text)
    assert recheck_certificate(again) == []
    assert again.to_json() == text
    assert not again.coverage_gaps()


def test_tampered_certificate_is_rejected():
    cert = verify_toughness(KneserParams(8, 3))
    obj = json.loads(cert.to_json())
    for ev in obj["evidence"]:
        if ev["method"] == "AB-SYSTEM":
            ev["data"]["budget"] = "400"
            ev["inequalities"][0]["lhs"] = {"num": "3", "den": "1"}
    problems = recheck_certificate(load_certificate(json.dumps(obj)))
    assert any("AB" in x for x in problems)

    obj = json.loads(cert.to_json())
    obj["evidence"] = [e for e in obj["evidence"] if e["cRange"] != ["9", "9"]]
    assert "c=9 uncovered" in recheck_certificate(load_certificate(json.dumps(obj)))

    obj = json.loads(cert.to_json())
    obj["toughness"] = {"num": "3", "den": "2"}
    assert recheck_certificate(load_certificate(json.dumps(obj)))


def test_deep_recheck():
    cert = verify_toughness(KneserParams(7, 3))
    assert recheck_certificate(load_certificate(cert.to_json()), deep=True) == []


def test_certificate_agrees_with_brute_force_on_petersen_like_scale():
    # K(5,2) is outside the certified family; brute force shows why (4/3 < 3/2)
    t, _ = brute_force_toughness(build_kneser(KneserParams(5, 2)))
    assert t < Fraction(3, 2)


def test_parallel_certificate_identical():
    p = KneserParams(9, 4)
    assert verify_toughness(p).to_json() == verify_toughness(p, workers=2).to_json()


def test_evidence_helpers():
    ev = Evidence(Method.HMP, (1, 1), [Inequality("a", 1, "<", 0), Inequality("b", 1, ">", 0)])
    assert not ev.holds() and [q.label for q in ev.failures()] == ["a"]
