"""Certified toughness of K(n,3) and K(n,4).

The target value is ``t = n/k - 1``. It is attained by the complement of a
star, and every cut with a better or equal ratio is ruled out by cases on the
number ``c`` of components it leaves:

* outside the window ``[C(n-k-1,k-1)+1, C(n-1,k-1)-C(n-k-1,k-1)+1]`` the
  ratio is at least the target, with equality only for star complements;
* inside it each ``c`` is closed by one method: the HMP separator bound,
  a finite (a, b) system, the max-degree argument, Kruskal-Katona on forced
  singletons, or the partition search.

Everything is exact; inequalities are stored with their numbers so a reloaded
certificate can be re-checked without trusting the producer.
"""

from __future__ import annotations

import json
import operator
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Iterable, Mapping, Sequence

from . import __version__
from .combinatorics import binomial, ceil_ratio, floor_ratio, kk_neighborhood_bound
from .families import Threshold, threshold
from .graphs import (
    NEIGHBORHOOD_CHECK_EDGE_CAP,
    KneserParams,
    analyze_removal,
    build_kneser,
    structural_checks,
)
from .partitions import (
    GENERAL_FROM,
    FLowerBound,
    edge_budget_U,
    searched_instance_f,
    search_range,
    verify_f_monotone_from_girth,
)
from .spectral import hmp_closed_form, hmp_coefficient, kneser_spectrum
from .threshold import window_bounds

DEFAULT_MAX_N = 60


class Method(str, Enum):
    TK_OUTSIDE = "TK-OUTSIDE"
    HMP = "HMP"
    AB_SYSTEM = "AB-SYSTEM"
    DEGREE_KK = "DEGREE+KK"
    KK_SINGLETON = "KK-SINGLETON"
    PARTITION_SEARCH = "PARTITION-SEARCH"


class VerificationFailed(RuntimeError):
    """A cell could not be eliminated; ``cell`` names it."""

    def __init__(self, message: str, cell: tuple[int, int] | None = None):
        super().__init__(message)
        self.cell = cell


class UnsupportedInstance(ValueError):
    pass


_RELATIONS = {">": operator.gt, ">=": operator.ge, "<": operator.lt, "<=": operator.le,
              "==": operator.eq}


@dataclass(frozen=True)
class Inequality:
    label: str
    lhs: Fraction
    rel: str
    rhs: Fraction

    def __post_init__(self) -> None:
        if self.rel not in _RELATIONS:
            raise ValueError(f"unknown relation {self.rel!r}")
        object.__setattr__(self, "lhs", Fraction(self.lhs))
        object.__setattr__(self, "rhs", Fraction(self.rhs))

    def holds(self) -> bool:
        return _RELATIONS[self.rel](self.lhs, self.rhs)

    def __str__(self) -> str:
        return f"{self.label}: {self.lhs} {self.rel} {self.rhs}"


@dataclass
class Evidence:
    method: Method
    c_range: tuple[int, int]
    inequalities: list[Inequality]
    s_range: tuple[int, int] | None = None
    data: dict[str, Any] = field(default_factory=dict)
    note: str = ""

    def holds(self) -> bool:
        return all(q.holds() for q in self.inequalities)

    def failures(self) -> list[Inequality]:
        return [q for q in self.inequalities if not q.holds()]


def _require(evidence: Evidence) -> Evidence:
    bad = evidence.failures()
    if bad:
        raise VerificationFailed(
            f"{evidence.method.value} fails at c={evidence.c_range}: " + "; ".join(map(str, bad)),
            evidence.c_range,
        )
    return evidence


# -- window and helpers -----------------------------------------------------------


@dataclass(frozen=True)
class CaseWindow:
    c_low: int
    c_high: int
    neighborhood_size: int
    neighborhood_ratio: Fraction

    @property
    def empty(self) -> bool:
        return self.c_low > self.c_high

    def __iter__(self):
        return iter(range(self.c_low, self.c_high + 1))


def tk_window(params: KneserParams) -> CaseWindow:
    """Component counts not already settled by the star and neighbourhood bounds."""
    if params.k < 3:
        raise ValueError("the component window is stated for k >= 3")
    lo, hi = window_bounds(params.n, params.k)
    nb = params.degree
    return CaseWindow(lo, hi, nb, Fraction(nb, 2))


def target(params: KneserParams) -> Fraction:
    return Fraction(params.n - params.k, params.k)


def s_ceiling(params: KneserParams, c: int) -> int:
    """Largest ``|S|`` with ``|S|/c <= n/k - 1``."""
    return floor_ratio(target(params) * c)


def balanced_split(sizes: Sequence[int], c: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Split component indices into two blocks, each of total size ``>= c - 1``.

    Subset-sum over the sizes picks the most balanced split; the guarantee
    that it reaches ``c - 1`` is what the callers rely on, so falling short
    raises.
    """
    if len(sizes) != c or c < 2:
        raise ValueError("need exactly c >= 2 component sizes")
    if any(x < 1 for x in sizes):
        raise ValueError("component sizes must be positive")
    total = sum(sizes)
    if total < 2 * c:
        raise ValueError("sizes must sum to at least 2c")
    reach = [1]
    for x in sizes:
        reach.append(reach[-1] | (reach[-1] << x))
    final = reach[-1]
    best = max((s for s in range(total + 1) if final >> s & 1), key=lambda s: min(s, total - s))
    first = []
    s = best
    for i in range(c, 0, -1):
        if not reach[i - 1] >> s & 1:
            first.append(i - 1)
            s -= sizes[i - 1]
    first_set = set(first)
    a = tuple(sorted(first_set))
    b = tuple(i for i in range(c) if i not in first_set)
    if min(sum(sizes[i] for i in a), sum(sizes[i] for i in b)) < c - 1:
        raise ArithmeticError("balanced split fell short of c - 1")
    return a, b


# -- elimination methods ----------------------------------------------------------


def hmp_cell(params: KneserParams, c: int) -> Evidence:
    """Separator bound with the balanced split: ``|S| >= coef (c-1)(R-(c-1))``."""
    s_max = s_ceiling(params, c)
    rest = params.order - s_max
    coef = hmp_coefficient(params)
    lower = coef * (c - 1) * (rest - (c - 1))
    return Evidence(
        Method.HMP, (c, c),
        [
            Inequality("balanced split applies: N - |S|max >= 2c", rest, ">=", 2 * c),
            Inequality("separator lower bound exceeds |S|max", lower, ">", s_max),
        ],
        s_range=(c + 1, s_max),
        data={"coefficient": coef, "sMax": s_max, "remaining": rest, "side": c - 1},
    )


def hmp_eliminate(params: KneserParams, c_range: tuple[int, int]) -> list[Evidence]:
    return [_require(hmp_cell(params, c)) for c in range(c_range[0], c_range[1] + 1)]


def hmp_general_k4(params: KneserParams) -> Evidence:
    """Whole-window HMP contradiction for k = 4, n >= 13, in closed form."""
    if params.k != 4:
        raise ValueError("closed-form window argument is for k = 4")
    n, N = params.n, params.order
    win = tk_window(params)
    coef = hmp_coefficient(params)
    ratio = target(params)

    def lower_at(x: int) -> Fraction:
        # c = x + 1 components, |S| <= ratio c, smaller side >= x
        return coef * x * (N - ratio * (x + 1) - x)

    # the bound is concave in x, so its minimum over the window is at an endpoint
    x_lo, x_hi = win.c_low - 1, win.c_high - 1
    upper = ratio * win.c_high
    return Evidence(
        Method.HMP, (win.c_low, win.c_high),
        [
            Inequality("coefficient matches k=4 closed form", coef, "==", hmp_closed_form(params)),
            Inequality("balanced split applies at c_high: N >= (n+4)/4 c_high", N, ">=",
                       Fraction(n + 4, 4) * win.c_high),
            Inequality("lower bound at c_low exceeds upper bound", lower_at(x_lo), ">", upper),
            Inequality("lower bound at c_high exceeds upper bound", lower_at(x_hi), ">", upper),
        ],
        data={"coefficient": coef, "lowerAtBottom": lower_at(x_lo), "lowerAtTop": lower_at(x_hi)},
    )


@dataclass(frozen=True)
class ABReport:
    c: int
    budget: int
    coeffs: tuple[int, int, int]
    a_max: int
    solutions: tuple[tuple[int, int], ...]

    @property
    def feasible(self) -> bool:
        return bool(self.solutions)

    @property
    def box_size(self) -> int:
        return sum(self.c - a + 1 for a in range(self.a_max + 1))


def ab_system_check(c: int, budget: int, coeffs: tuple[int, int, int], a_max: int) -> ABReport:
    """Scan ``0<=a<=a_max, 0<=b<=c-a`` for ``x a + y b + z (c-a-b) <= budget``."""
    x, y, z = coeffs
    sols = tuple((a, b) for a in range(min(a_max, c) + 1) for b in range(c - a + 1)
                 if x * a + y * b + z * (c - a - b) <= budget)
    return ABReport(c, budget, tuple(coeffs), a_max, sols)


def _kk_or_none(q: int, params: KneserParams) -> int | None:
    return kk_neighborhood_bound(q, params) if 1 <= q <= params.ekr else None


def ab_system_for(params: KneserParams, c: int) -> tuple[ABReport, Evidence]:
    """Derive and scan the (a, b) system for one ``c``.

    Singletons send out ``l`` edges, K2s ``2l - 2``; any other component has
    order between the girth and ``N - 2c`` and is charged the least Mohar
    floor over that range. The spectral ceiling is maximised over the
    admissible ``|S|``, and ``a`` is capped where Kruskal-Katona outgrows
    ``|S|``.
    """
    ell, N, g = params.degree, params.order, params.girth
    s_lo, s_hi = c + 1, s_ceiling(params, c)
    mu2 = kneser_spectrum(params).laplacian().algebraic_connectivity
    t_max = N - 2 * c
    other = min(ceil_ratio(Fraction(mu2 * t * (N - t), N)) for t in range(g, t_max + 1))
    budget = max(edge_budget_U(params, s) for s in range(s_lo, s_hi + 1))
    a_max = 0
    while a_max < c and (v := _kk_or_none(a_max + 1, params)) is not None and v <= s_hi:
        a_max += 1
    report = ab_system_check(c, budget, (ell, 2 * ell - 2, other), a_max)
    ineqs = [Inequality("integer (a, b) solutions", len(report.solutions), "==", 0)]
    if a_max < c:
        kk_next = _kk_or_none(a_max + 1, params)
        if kk_next is not None:
            ineqs.append(Inequality(f"KK({a_max + 1}) exceeds |S|max", kk_next, ">", s_hi))
    ev = Evidence(
        Method.AB_SYSTEM, (c, c), ineqs, s_range=(s_lo, s_hi),
        data={"coeffs": list(report.coeffs), "budget": budget, "aMax": a_max,
              "otherSizeRange": [g, t_max], "box": report.box_size},
    )
    return report, ev


def kk_contradiction(params: KneserParams, singletons: int, s_max: int) -> Inequality:
    kk = _kk_or_none(singletons, params)
    if kk is None:
        # more pairwise non-adjacent vertices than any intersecting family holds
        return Inequality(f"{singletons} singletons exceed the EKR bound", singletons, ">", params.ekr)
    return Inequality(f"KK({singletons}) exceeds |S|max", kk, ">", s_max)


def kk_singleton_eliminate(params: KneserParams, c: int, non_singleton_allowance: int = 1) -> Evidence:
    """At most ``allowance`` non-singleton components, so the rest are singletons.

    With one non-singleton allowed the justification is the 4-cycle/two-edge
    switching bound: two non-singleton components would give an independent
    set of size ``c`` next to two induced edges, impossible once ``c``
    exceeds that bound.
    """
    s_max = s_ceiling(params, c)
    ineqs = []
    if non_singleton_allowance == 1:
        ineqs.append(Inequality("c exceeds switching bound", c, ">", threshold(Threshold.SWITCH2, params)))
    elif non_singleton_allowance != 0:
        raise ValueError("only allowances 0 and 1 have a justification")
    singles = c - non_singleton_allowance
    ineqs.append(kk_contradiction(params, singles, s_max))
    return Evidence(Method.KK_SINGLETON, (c, c), ineqs, s_range=(c + 1, s_max),
                    data={"singletons": singles, "sMax": s_max})


def degree_argument(params: KneserParams, c: int, *, check_route: bool = True) -> Evidence:
    """Max-degree route for triangle-free instances.

    Edge counting forces a component vertex of degree ``d >= l - mu_N |S|/N``;
    its neighbours plus one vertex from every other component form an
    independent set of ``d + c - 1`` vertices. Above the switching bound only
    one other component can be a non-singleton, leaving ``c - 2`` singletons.
    """
    if check_route and route(params, c) is not Method.DEGREE_KK:
        raise ValueError(f"c={c} is not routed to the degree argument for {params}")
    ell, N = params.degree, params.order
    mu_max = kneser_spectrum(params).laplacian().largest
    s_max = s_ceiling(params, c)
    d_floor = ceil_ratio(ell - Fraction(mu_max * s_max, N))
    indep = d_floor + c - 1
    return Evidence(
        Method.DEGREE_KK, (c, c),
        [
            Inequality("triangle-free: 3k > n", 3 * params.k, ">", params.n),
            Inequality("independent set beats switching bound", indep, ">",
                       threshold(Threshold.SWITCH2, params)),
            kk_contradiction(params, c - 2, s_max),
        ],
        s_range=(c + 1, s_max),
        data={"sMax": s_max, "degreeFloor": d_floor, "independentSet": indep},
    )


def partition_evidence(params: KneserParams, c_range: tuple[int, int], f: FLowerBound | None = None,
                       workers: int = 1) -> list[Evidence]:
    f = searched_instance_f(params) if f is None else f
    out = []
    for outcome in search_range(params, c_range, f, workers=workers):
        c = outcome.problem.c
        max_t = params.order - 2 * c
        g = f.girth
        later = [f(t) for t in range(g + 1, max_t + 1) if t not in f.forbidden]
        totals = outcome.rejection_totals()
        ev = Evidence(
            Method.PARTITION_SEARCH, (c, c),
            [
                Inequality("f(g) is the least floor up to N - 2c", f(g), "<=", min(later, default=f(g))),
                Inequality("surviving profiles", len(outcome.survivors), "==", 0),
            ],
            s_range=outcome.problem.s_range,
            data={
                "cells": outcome.cells_checked,
                "abPairs": sum(cell.ab_pairs for cell in outcome.cells),
                "partitions": sum(cell.partitions for cell in outcome.cells),
                "rejections": totals,
                "fTable": {str(t): v for t, v in sorted(f.explicit.items())},
                "generalFrom": f.general_from,
                "forbidden": sorted(f.forbidden),
            },
            note="line-5 degree d read as the regular degree l",
        )
        out.append(_require(ev))
    return out


# -- routing ------------------------------------------------------------------------

Route = list[tuple[int, int, Method]]


def default_routing(params: KneserParams) -> Route:
    """Which method closes which ``c`` range of the window."""
    n, k = params.n, params.k
    win = tk_window(params)
    if win.empty:
        return []
    lo, hi = win.c_low, win.c_high
    H, P = Method.HMP, Method.PARTITION_SEARCH
    table: dict[tuple[int, int], Route] = {
        (7, 3): [(lo, 4, H), (5, hi, P)],
        (8, 3): [(lo, 14, H), (15, hi, Method.AB_SYSTEM)],
        (9, 4): [(lo, hi, P)],
        (10, 4): [(lo, 47, H), (48, hi, P)],
        (11, 4): [(lo, 85, H), (86, hi, Method.DEGREE_KK)],
        # the balanced split needs N - 2c >= 2c, i.e. c <= 123
        (12, 4): [(lo, 123, H), (124, hi, Method.KK_SINGLETON)],
    }
    if (n, k) in table:
        return table[(n, k)]
    if k == 3 and 9 <= n <= 11:
        return [(lo, hi, H)]
    if k == 4 and n >= 13:
        return [(lo, hi, H)]
    raise UnsupportedInstance(f"no elimination route for {params}")


def route(params: KneserParams, c: int, routing: Route | None = None) -> Method:
    for lo, hi, method in default_routing(params) if routing is None else routing:
        if lo <= c <= hi:
            return method
    raise ValueError(f"c={c} is not in the window of {params}")


def _apply(params: KneserParams, lo: int, hi: int, method: Method, workers: int,
           f: FLowerBound | None) -> list[Evidence]:
    if method is Method.HMP:
        if params.k == 4 and params.n >= 13 and (lo, hi) == (tk_window(params).c_low, tk_window(params).c_high):
            return [_require(hmp_general_k4(params))]
        return hmp_eliminate(params, (lo, hi))
    if method is Method.AB_SYSTEM:
        out = []
        for c in range(lo, hi + 1):
            _, ev = ab_system_for(params, c)
            out.append(_require(ev))
        return out
    if method is Method.DEGREE_KK:
        return [_require(degree_argument(params, c, check_route=False)) for c in range(lo, hi + 1)]
    if method is Method.KK_SINGLETON:
        return [_require(kk_singleton_eliminate(params, c)) for c in range(lo, hi + 1)]
    if method is Method.PARTITION_SEARCH:
        return partition_evidence(params, (lo, hi), f, workers)
    raise ValueError(f"{method} does not close window cells")


# -- certificate --------------------------------------------------------------------


def _outside_evidence(params: KneserParams, win: CaseWindow, structural) -> list[Evidence]:
    N, ekr = params.order, params.ekr
    t = target(params)
    out = []
    nb = win.neighborhood_size
    low_top = win.c_low - 1
    below = [
        Inequality("neighbourhood cut ratio beats target", win.neighborhood_ratio, ">", t),
        Inequality("C(n-k,k)/C(n-k-1,k-1) equals target", Fraction(nb, max(low_top, 1)), "==", t),
    ]
    data: dict[str, Any] = {"neighborhoodSize": nb}
    if structural is not None:
        data["componentsAfterNeighborhood"] = structural.components_after_open_neighborhood
        if structural.components_after_open_neighborhood is not None:
            below.append(Inequality("components after deleting N(u)",
                                    structural.components_after_open_neighborhood, "==", 2))
    out.append(Evidence(Method.TK_OUTSIDE, (2, low_top), below, data=data,
                        note="|S| = C(n-k,k) only for S = N(u) (c = 2); larger S gives ratio > target"))
    out.append(Evidence(
        Method.TK_OUTSIDE, (win.c_high + 1, ekr),
        [
            Inequality("star complement ratio equals target", Fraction(N - ekr, ekr), "==", t),
            Inequality("at most EKR singletons", ekr, "==", binomial(params.n - 1, params.k - 1)),
        ],
        note="beyond the window all components are singletons; equality forces a star complement",
    ))
    return out


ASSUMPTIONS = (
    "edge-connectivity of K(n,k) equals its degree and only vertex stars are minimum edge cuts",
    "every minimum vertex cut of K(n,k) is a vertex neighbourhood",
)


@dataclass
class ToughnessCertificate:
    params: KneserParams
    toughness: Fraction
    window: CaseWindow
    evidence: list[Evidence]
    witness: dict[str, Any]
    assumptions: list[str]
    caps: dict[str, int]
    tool_version: str = __version__

    def covered(self) -> set[int]:
        return {c for ev in self.evidence if ev.method is not Method.TK_OUTSIDE
                for c in range(ev.c_range[0], ev.c_range[1] + 1)}

    def coverage_gaps(self) -> list[int]:
        have = self.covered()
        return [c for c in self.window if c not in have]

    def to_json(self) -> str:
        return json.dumps(_cert_to_obj(self), indent=2)


def verify_toughness(params: KneserParams, *, workers: int = 1, max_n: int = DEFAULT_MAX_N,
                     routing: Route | None = None, f: FLowerBound | None = None) -> ToughnessCertificate:
    """Build a certificate that ``t(K(n,k)) = n/k - 1``; raises if any cell stays open."""
    n, k = params.n, params.k
    if n > max_n:
        raise UnsupportedInstance(f"n={n} above configured maximum {max_n}")
    if k < 3:
        raise UnsupportedInstance("certificates cover k >= 3")
    win = tk_window(params)
    if k >= 5 and not win.empty:
        raise UnsupportedInstance(f"{params}: window nonempty and no route for k >= 5")
    if routing is None:
        routing = default_routing(params)
    covered = set()
    for lo, hi, _ in routing:
        covered.update(range(lo, hi + 1))
    missing = [c for c in win if c not in covered]
    if missing:
        raise VerificationFailed(f"routing leaves c={missing[0]} uncovered", (missing[0], missing[0]))

    structural = None
    small = params.order * params.degree // 2 <= NEIGHBORHOOD_CHECK_EDGE_CAP
    if small:
        structural = structural_checks(params)
    evidence = _outside_evidence(params, win, structural)
    for lo, hi, method in routing:
        evidence.extend(_apply(params, lo, hi, method, workers, f))

    N, ekr = params.order, params.ekr
    witness: dict[str, Any] = {"kind": "complement-of-star", "center": 0, "cutSize": N - ekr,
                               "components": ekr, "ratio": Fraction(N - ekr, ekr)}
    if small:
        g = build_kneser(params)
        cut = [i for i, m in enumerate(g.labels) if not m & 1]
        rep = analyze_removal(g, cut)
        if rep.count != ekr or set(rep.sizes) != {1} or len(cut) != N - ekr:
            raise VerificationFailed("star complement does not leave EKR singletons")
        witness["verifiedBy"] = "component analysis"
    else:
        witness["verifiedBy"] = "counting"
    if witness["ratio"] != target(params):
        raise VerificationFailed("witness ratio differs from n/k - 1")

    assumptions = list(ASSUMPTIONS)
    if structural is not None and structural.edge_connectivity is not None:
        assumptions[0] += f" (edge-connectivity {structural.edge_connectivity} checked by max-flow)"
    if any(m is Method.PARTITION_SEARCH for _, _, m in routing):
        assumptions.append("partition-search final check uses the regular degree l for d")
    assumptions.append("uniqueness of the optimal cut follows from the equality case; "
                       "not brute-forced at this size")
    cert = ToughnessCertificate(
        params, target(params), win, evidence, witness, assumptions,
        caps={"maxN": max_n, "neighborhoodEdgeCap": NEIGHBORHOOD_CHECK_EDGE_CAP},
    )
    gaps = cert.coverage_gaps()
    if gaps:
        raise VerificationFailed(f"window cell c={gaps[0]} has no evidence", (gaps[0], gaps[0]))
    return cert


# -- serialisation --------------------------------------------------------------------


def _enc(v: Any) -> Any:
    if isinstance(v, bool):
        return v
    if isinstance(v, int):
        return str(v)
    if isinstance(v, Fraction):
        return {"num": str(v.numerator), "den": str(v.denominator)}
    if isinstance(v, (list, tuple)):
        return [_enc(x) for x in v]
    if isinstance(v, Mapping):
        return {str(k): _enc(x) for k, x in v.items()}
    return v


def _frac(obj: Mapping[str, str]) -> Fraction:
    return Fraction(int(obj["num"]), int(obj["den"]))


def _evidence_obj(ev: Evidence) -> dict[str, Any]:
    return {
        "method": ev.method.value,
        "cRange": _enc(ev.c_range),
        "sRange": None if ev.s_range is None else _enc(ev.s_range),
        "inequalities": [{"label": q.label, "lhs": _enc(q.lhs), "rel": q.rel, "rhs": _enc(q.rhs)}
                         for q in ev.inequalities],
        "data": _enc(ev.data),
        "note": ev.note,
    }


def _cert_to_obj(cert: ToughnessCertificate) -> dict[str, Any]:
    return {
        "params": {"n": str(cert.params.n), "k": str(cert.params.k)},
        "toughness": _enc(cert.toughness),
        "window": {"cLow": str(cert.window.c_low), "cHigh": str(cert.window.c_high)},
        "evidence": [_evidence_obj(ev) for ev in cert.evidence],
        "witnessCut": _enc(cert.witness),
        "assumptions": list(cert.assumptions),
        "caps": _enc(cert.caps),
        "toolVersion": cert.tool_version,
    }


def load_certificate(text: str) -> ToughnessCertificate:
    obj = json.loads(text)
    params = KneserParams(int(obj["params"]["n"]), int(obj["params"]["k"]))
    win_obj = obj["window"]
    nb = params.degree
    window = CaseWindow(int(win_obj["cLow"]), int(win_obj["cHigh"]), nb, Fraction(nb, 2))
    evidence = []
    for e in obj["evidence"]:
        evidence.append(Evidence(
            Method(e["method"]),
            (int(e["cRange"][0]), int(e["cRange"][1])),
            [Inequality(q["label"], _frac(q["lhs"]), q["rel"], _frac(q["rhs"])) for q in e["inequalities"]],
            s_range=None if e["sRange"] is None else (int(e["sRange"][0]), int(e["sRange"][1])),
            data=e["data"],
            note=e["note"],
        ))
    witness = dict(obj["witnessCut"])
    witness["ratio"] = _frac(witness["ratio"])
    return ToughnessCertificate(params, _frac(obj["toughness"]), window, evidence, witness,
                                list(obj["assumptions"]), {k: int(v) for k, v in obj["caps"].items()},
                                obj["toolVersion"])


def recheck_certificate(cert: ToughnessCertificate, deep: bool = False) -> list[str]:
    """Problems found when re-checking a (reloaded) certificate; empty means valid.

    The shallow check re-evaluates every stored inequality, the window, the
    coverage and the witness arithmetic. ``deep`` also recomputes each record
    from the parameters and compares, re-running searches.
    """
    params = cert.params
    problems = []
    if cert.toughness != target(params):
        problems.append(f"claimed toughness {cert.toughness} != n/k - 1")
    win = tk_window(params)
    if (win.c_low, win.c_high) != (cert.window.c_low, cert.window.c_high):
        problems.append("window does not match the closed form")
    for ev in cert.evidence:
        for q in ev.failures():
            problems.append(f"{ev.method.value} c={ev.c_range}: {q}")
    for c in cert.coverage_gaps():
        problems.append(f"c={c} uncovered")
    ekr = params.ekr
    w = cert.witness
    if int(w["components"]) != ekr or int(w["cutSize"]) != params.order - ekr:
        problems.append("witness counts are not those of a star complement")
    if w["ratio"] != Fraction(int(w["cutSize"]), int(w["components"])) or w["ratio"] != target(params):
        problems.append("witness ratio mismatch")
    for ev in cert.evidence:
        if ev.method is Method.AB_SYSTEM:
            coeffs = tuple(int(x) for x in ev.data["coeffs"])
            rep = ab_system_check(ev.c_range[0], int(ev.data["budget"]), coeffs, int(ev.data["aMax"]))
            if rep.feasible:
                problems.append(f"AB system at c={ev.c_range[0]} has solutions {rep.solutions[:3]}")
    if deep:
        fresh = verify_toughness(params, max_n=max(params.n, int(cert.caps.get("maxN", params.n))))
        old = {(e.method, e.c_range): [(q.label, q.lhs, q.rel, q.rhs) for q in e.inequalities]
               for e in cert.evidence}
        new = {(e.method, e.c_range): [(q.label, q.lhs, q.rel, q.rhs) for q in e.inequalities]
               for e in fresh.evidence}
        if old != new:
            problems.append("recomputed evidence differs from the stored evidence")
    return problems


def supported_range(k: int, max_n: int = DEFAULT_MAX_N) -> Iterable[int]:
    return range(2 * k + 1, max_n + 1)


def instance_f(params: KneserParams) -> FLowerBound | None:
    return searched_instance_f(params) if (params.n, params.k) in GENERAL_FROM else None


def f_is_monotone(params: KneserParams, c: int) -> bool:
    return verify_f_monotone_from_girth(searched_instance_f(params), params.order - 2 * c)
