"""Partition search over component-size profiles of a hypothetical cut.

For a cut ``S`` with ``c`` components left over, the component sizes form a
partition of ``N - |S|`` into ``c`` parts. Each profile is tested against
vertex counting, edge counting (a per-size floor on edges leaving a
component versus the spectral ceiling ``U(|S|)``) and Kruskal-Katona
neighbourhood bounds for the singletons and K2 components.

Constraint labels used in reports (``a`` singletons, ``b`` K2 components,
``p`` the sizes of the remaining components, ``g`` the girth):

``count``         a + b <= c
``vertices``      a + 2b + g(c-a-b) <= N - |S|
``edges-ab``      l a + (2l-2) b + f(g)(c-a-b) <= U(|S|)
``kk-singletons`` KK(r) <= |S| for 1 <= r <= a
``kk-pairs``      KK(a+r) - r <= |S| for 1 <= r <= b
``edges``         L(p) + l a + (2l-2) b <= U(|S|), checked per partition
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Mapping, Sequence

from .combinatorics import ceil_ratio, floor_ratio, kk_neighborhood_bound
from .graphs import KneserParams
from .spectral import kneser_spectrum

AB_CONSTRAINTS = ("count", "vertices", "edges-ab", "kk-singletons", "kk-pairs")
CONSTRAINT_ORDER = AB_CONSTRAINTS + ("edges",)

# Size where each searched instance switches from tabulated floors to the
# Mohar bound, and published floors kept as golden references only.
GENERAL_FROM = {(7, 3): 8, (10, 4): 6, (9, 4): 17}
REFERENCE_F_TABLES = {
    (7, 3): {1: 4, 2: 6, 6: 12, 7: 14},
    (10, 4): {1: 15, 2: 28, 4: 52, 5: 63},
    (9, 4): {1: 5, 2: 8, 6: 18, 7: 21, 8: 22, 9: 25, 10: 26, 11: 27, 12: 28,
             13: 29, 14: 28, 15: 31, 16: 32},
}
REFERENCE_FORBIDDEN = {(7, 3): {3, 4, 5}, (10, 4): {3}, (9, 4): {3, 4, 5}}


class SearchError(RuntimeError):
    pass


@dataclass(frozen=True)
class FLowerBound:
    """Floor on ``e(C, S)`` for a component ``C`` of a given size."""

    params: KneserParams
    explicit: Mapping[int, int]
    general_from: int
    forbidden: frozenset[int]

    def __post_init__(self) -> None:
        ell = self.params.degree
        if self.explicit.get(1) != ell or self.explicit.get(2) != 2 * ell - 2:
            raise ValueError("explicit floors must start with f(1)=l, f(2)=2l-2")

    @property
    def girth(self) -> int:
        return self.params.girth

    def __call__(self, t: int) -> int:
        return f_lower_bound(self, t)


def f_lower_bound(f: FLowerBound, t: int) -> int:
    if t < 1:
        raise ValueError("component size must be positive")
    if t in f.forbidden:
        raise ValueError(f"component size {t} is excluded (would be a tree)")
    if t in f.explicit:
        return f.explicit[t]
    if t < f.general_from:
        raise ValueError(f"no floor tabulated for size {t}")
    return _mohar_floor(f.params, t)


@lru_cache(maxsize=None)
def _mohar_floor(params: KneserParams, t: int) -> int:
    mu2 = kneser_spectrum(params).laplacian().algebraic_connectivity
    n = params.order
    return ceil_ratio(Fraction(mu2 * t * (n - t), n))


def forbidden_sizes(params: KneserParams) -> frozenset[int]:
    """Sizes 3..g-1: any connected graph that small inside K(n,k) is a tree."""
    return frozenset(range(3, params.girth))


def build_f_lower_bound(params: KneserParams, max_edges: Mapping[int, int],
                        general_from: int) -> FLowerBound:
    """Assemble ``f`` from maximum internal edge counts of admissible components.

    ``max_edges[t]`` is the most edges a biconnected component of order ``t``
    can have; the floor is then ``l t - 2 max_edges[t]``.
    """
    ell = params.degree
    explicit = {1: ell, 2: 2 * ell - 2}
    forbidden = forbidden_sizes(params)
    for t in range(params.girth, general_from):
        if t not in max_edges:
            raise ValueError(f"missing maximum edge count for component order {t}")
        explicit[t] = ell * t - 2 * max_edges[t]
    known = REFERENCE_FORBIDDEN.get((params.n, params.k))
    if known is not None and known != set(forbidden):
        raise AssertionError(f"girth rule gives {sorted(forbidden)}, expected {sorted(known)}")
    return FLowerBound(params, explicit, general_from, forbidden)


def verify_f_monotone_from_girth(f: FLowerBound, max_t: int) -> bool:
    """True iff ``f(g) <= f(t)`` for every admissible ``g <= t <= max_t``."""
    g = f.girth
    base = f(g)
    return all(f(t) >= base for t in range(g + 1, max_t + 1) if t not in f.forbidden)


def edge_budget_U(params: KneserParams, s: int) -> int:
    n = params.order
    if not 1 <= s < n:
        raise ValueError(f"|S|={s} outside [1, {n - 1}]")
    mu_max = kneser_spectrum(params).laplacian().largest
    return min(params.degree * s, floor_ratio(Fraction(mu_max * s * (n - s), n)))


def enumerate_partitions(total: int, parts: int, min_part: int = 1) -> Iterator[tuple[int, ...]]:
    """Partitions of ``total`` into exactly ``parts`` parts, each ``>= min_part``.

    Knuth's Algorithm H (TAOCP 7.2.1.4) run on the shifted problem, so the
    stream is in co-lex order; each partition is yielded in ascending order.
    """
    if min_part < 1:
        raise ValueError("min_part must be >= 1")
    if parts == 0:
        if total == 0:
            yield ()
        return
    shift = min_part - 1
    n = total - parts * shift
    if n < parts:
        return
    if parts == 1:
        yield (total,)
        return
    m = parts
    a = [0] * (m + 2)  # 1-based, a[m+1] is a sentinel
    a[1] = n - m + 1
    for j in range(2, m + 1):
        a[j] = 1
    a[m + 1] = -1
    while True:
        yield tuple(a[j] + shift for j in range(m, 0, -1))
        if a[2] < a[1] - 1:
            a[1] -= 1
            a[2] += 1
            continue
        j = 3
        s = a[1] + a[2] - 1
        while a[j] >= a[1] - 1:
            s += a[j]
            j += 1
        if j > m:
            return
        x = a[j] + 1
        a[j] = x
        j -= 1
        while j > 1:
            a[j] = x
            s -= x
            j -= 1
        a[1] = s


@dataclass(frozen=True)
class SearchProblem:
    params: KneserParams
    c: int
    s_range: tuple[int, int]
    f: FLowerBound

    def __post_init__(self) -> None:
        lo, hi = self.s_range
        ceiling = self.s_ceiling(self.params, self.c)
        if lo < self.c + 1 or hi > ceiling:
            raise ValueError(f"|S| range {self.s_range} outside [{self.c + 1}, {ceiling}]")

    @staticmethod
    def s_ceiling(params: KneserParams, c: int) -> int:
        return floor_ratio(Fraction(params.n - params.k, params.k) * c)

    @classmethod
    def full(cls, params: KneserParams, c: int, f: FLowerBound) -> "SearchProblem":
        return cls(params, c, (c + 1, cls.s_ceiling(params, c)), f)


@dataclass
class CellReport:
    c: int
    s: int
    budget: int
    ab_pairs: int = 0
    ab_passed: int = 0
    partitions: int = 0
    rejections: dict[str, int] = field(default_factory=lambda: {k: 0 for k in CONSTRAINT_ORDER})
    survivors: list[tuple[int, int, tuple[int, ...]]] = field(default_factory=list)

    def to_json(self, params: KneserParams) -> str:
        record = {
            "n": params.n, "k": params.k, "c": self.c, "s": self.s, "U": self.budget,
            "ab_pairs": self.ab_pairs, "ab_passed": self.ab_passed,
            "partitions": self.partitions, "rejections": self.rejections,
            "survivor_count": len(self.survivors),
            "survivors": [{"a": a, "b": b, "p": list(p)} for a, b, p in self.survivors],
        }
        return json.dumps(record, sort_keys=True)


@dataclass
class SearchOutcome:
    problem: SearchProblem
    cells: list[CellReport]
    elapsed: float

    @property
    def survivors(self) -> list[tuple[int, int, int, tuple[int, ...]]]:
        return [(cell.s, a, b, p) for cell in self.cells for a, b, p in cell.survivors]

    @property
    def cells_checked(self) -> int:
        return len(self.cells)

    def rejection_totals(self) -> dict[str, int]:
        totals = {k: 0 for k in CONSTRAINT_ORDER}
        for cell in self.cells:
            for key, v in cell.rejections.items():
                totals[key] += v
        return totals


class _KK:
    """Cached KK(q); ``None`` when no independent set of size q exists."""

    def __init__(self, params: KneserParams):
        self.params = params
        self.ekr = params.ekr
        self._cache: dict[int, int | None] = {}

    def __call__(self, q: int) -> int | None:
        if q not in self._cache:
            self._cache[q] = kk_neighborhood_bound(q, self.params) if 1 <= q <= self.ekr else None
        return self._cache[q]


def _kk_singletons_ok(kk: _KK, a: int, s: int) -> bool:
    for r in range(1, a + 1):
        v = kk(r)
        if v is None or v > s:
            return False
    return True


def _kk_pairs_ok(kk: _KK, a: int, b: int, s: int) -> bool:
    for r in range(1, b + 1):
        v = kk(a + r)
        if v is None or v - r > s:
            return False
    return True


def check_candidate(problem: SearchProblem, s: int, a: int, b: int, p: Sequence[int]) -> list[str]:
    """Independent re-check of one profile; returns the violated constraint labels."""
    params, c, f = problem.params, problem.c, problem.f
    ell, g, n = params.degree, f.girth, params.order
    kk = _KK(params)
    budget = edge_budget_U(params, s)
    m = c - a - b
    bad = []
    if a + b > c:
        bad.append("count")
    if a + 2 * b + g * m > n - s:
        bad.append("vertices")
    if ell * a + (2 * ell - 2) * b + f(g) * max(m, 0) > budget:
        bad.append("edges-ab")
    if len(p) != m or sum(p) != n - s - a - 2 * b or any(x < g or x in f.forbidden for x in p):
        bad.append("shape")
    elif sum(f(x) for x in p) + ell * a + (2 * ell - 2) * b > budget:
        bad.append("edges")
    if not _kk_singletons_ok(kk, a, s):
        bad.append("kk-singletons")
    if not _kk_pairs_ok(kk, a, b, s):
        bad.append("kk-pairs")
    return bad


def _search_cell(problem: SearchProblem, s: int) -> CellReport:
    params, c, f = problem.params, problem.c, problem.f
    ell, g, n = params.degree, f.girth, params.order
    kk = _KK(params)
    remaining = n - s
    budget = edge_budget_U(params, s)
    fg = f(g)
    cell = CellReport(c, s, budget)
    rej = cell.rejections
    for a in range(c + 1):
        for b in range(c + 1):
            cell.ab_pairs += 1
            m = c - a - b
            if m < 0:
                rej["count"] += 1
                continue
            if a + 2 * b + g * m > remaining:
                rej["vertices"] += 1
                continue
            base = ell * a + (2 * ell - 2) * b
            if base + fg * m > budget:
                rej["edges-ab"] += 1
                continue
            if not _kk_singletons_ok(kk, a, s):
                rej["kk-singletons"] += 1
                continue
            if not _kk_pairs_ok(kk, a, b, s):
                rej["kk-pairs"] += 1
                continue
            cell.ab_passed += 1
            for p in enumerate_partitions(remaining - a - 2 * b, m, g):
                cell.partitions += 1
                if sum(f(x) for x in p) + base <= budget:
                    if check_candidate(problem, s, a, b, p):
                        raise SearchError(f"survivor {(s, a, b, p)} fails re-validation")
                    cell.survivors.append((a, b, p))
                else:
                    rej["edges"] += 1
    return cell


def _max_component(params: KneserParams, c: int) -> int:
    return params.order - 2 * c


def partition_search(problem: SearchProblem) -> SearchOutcome:
    """Run every ``|S|`` cell of one component count ``c``."""
    max_t = _max_component(problem.params, problem.c)
    if not verify_f_monotone_from_girth(problem.f, max_t):
        raise SearchError(f"f is not minimised at the girth up to size {max_t}; "
                          "the (a, b) pre-filter would be unsound")
    start = time.perf_counter()
    lo, hi = problem.s_range
    cells = [_search_cell(problem, s) for s in range(lo, hi + 1)]
    return SearchOutcome(problem, cells, time.perf_counter() - start)


def _run_problem(problem: SearchProblem) -> SearchOutcome:
    return partition_search(problem)


def search_range(params: KneserParams, c_range: tuple[int, int], f: FLowerBound,
                 workers: int = 1) -> list[SearchOutcome]:
    """Search every ``c`` in the inclusive range; results come back in ``c`` order."""
    problems = [SearchProblem.full(params, c, f) for c in range(c_range[0], c_range[1] + 1)]
    if workers <= 1:
        return [partition_search(p) for p in problems]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_problem, problems))


def searched_instance_f(params: KneserParams, max_edges: Mapping[int, int] | None = None) -> FLowerBound:
    """``f`` for one of the three searched instances.

    Without ``max_edges`` the component orders are enumerated here.
    """
    key = (params.n, params.k)
    if key not in GENERAL_FROM:
        raise KeyError(f"no partition-search setup for {params}")
    general_from = GENERAL_FROM[key]
    if max_edges is None:
        from .components import GenSpec, max_edges as enumerate_max

        max_edges = {}
        for t in range(params.girth, general_from):
            count, _ = enumerate_max(GenSpec(t, params.degree, params.girth, True))
            if count is None:
                raise SearchError(f"no admissible component of order {t}")
            max_edges[t] = count
    return build_f_lower_bound(params, max_edges, general_from)
