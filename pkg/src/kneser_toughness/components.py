"""Isomorph-free generation of small graphs with bounded degree and girth.

Graphs are grown one vertex at a time by canonical augmentation: a child is
kept only when the new vertex lies in the orbit of the child's canonical
deletion vertex (a minimum-degree vertex chosen by an invariant, ties broken
by the nauty canonical labelling). Every isomorphism class is then reached
from exactly one parent class; duplicates among the children of one parent
are removed by canonical form.

Deleting a minimum-degree vertex from a graph with ``e`` edges on ``j``
vertices leaves at least ``e - floor(2e/j)`` edges, so a search for graphs
with at least ``T`` edges can prune every ancestor level accordingly.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Iterator

import pynauty

from .graphs import SimpleGraph, girth, is_biconnected, FOREST_GIRTH

MAX_VERTICES = 16


@dataclass(frozen=True)
class GenSpec:
    vertex_count: int
    max_degree: int
    min_girth: int
    require_biconnected: bool = True

    def __post_init__(self) -> None:
        if self.require_biconnected and self.vertex_count < 3:
            raise ValueError("biconnected graphs here need at least 3 vertices")
        if self.vertex_count < 1 or self.max_degree < 0:
            raise ValueError("malformed generation spec")


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _canonical(adj: list[int], n: int) -> tuple[list[int], list[int]]:
    """Return (canonical positions, orbit ids) for the graph on ``n`` vertices."""
    g = pynauty.Graph(n, adjacency_dict={u: [w for w in range(n) if adj[u] >> w & 1] for u in range(n)})
    lab = pynauty.canon_label(g)
    pos = [0] * n
    for i, u in enumerate(lab):
        pos[u] = i
    orbits = pynauty.autgrp(g)[3]
    return pos, orbits


def _canonical_form(adj: list[int], n: int, pos: list[int]) -> tuple[tuple[int, int], ...]:
    edges = []
    for u in range(n):
        x = adj[u]
        while x:
            low = x & -x
            w = low.bit_length() - 1
            x ^= low
            if u < w:
                a, b = pos[u], pos[w]
                edges.append((a, b) if a < b else (b, a))
    return tuple(sorted(edges))


def _requirements(target_vertices: int, min_edges: int) -> list[int]:
    req = [0] * (target_vertices + 1)
    req[target_vertices] = min_edges
    for j in range(target_vertices, 1, -1):
        req[j - 1] = max(0, req[j] - (2 * req[j]) // j)
    return req


class _Generator:
    def __init__(self, spec: GenSpec, min_edges: int = 0):
        self.spec = spec
        self.V = spec.vertex_count
        self.D = spec.max_degree
        self.radius = max(spec.min_girth, 3) - 3
        self.req = _requirements(self.V, min_edges)
        self.nodes = 0

    def _conflicts(self, adj: list[int], n: int) -> list[int]:
        out = []
        for u in range(n):
            ball = 1 << u
            for _ in range(self.radius):
                grow = ball
                x = ball
                while x:
                    low = x & -x
                    grow |= adj[low.bit_length() - 1]
                    x ^= low
                ball = grow
            out.append(ball)
        return out

    def _neighbour_sets(self, adj, degs, n, e) -> Iterator[int]:
        D = self.D
        need = self.req[n + 1] - e
        delta = min(degs) if n else 0
        lo = max(need, 0)
        hi = min(D, delta + 1, n)
        if n + 1 == self.V and self.spec.require_biconnected:
            lo = max(lo, 2)
        if lo > hi:
            return
        conflict = self._conflicts(adj, n)
        for size in range(lo, hi + 1):
            required = 0
            open_ = 0
            for u in range(n):
                if degs[u] == size - 1:
                    required |= 1 << u
                if degs[u] < D:
                    open_ |= 1 << u
            if required & ~open_:
                continue
            # required vertices must be mutually compatible
            ok = True
            x = required
            while x:
                low = x & -x
                x ^= low
                if conflict[low.bit_length() - 1] & required & ~low:
                    ok = False
                    break
            if not ok or _popcount(required) > size:
                continue
            avail = open_ & ~required
            x = required
            while x:
                low = x & -x
                x ^= low
                avail &= ~conflict[low.bit_length() - 1]
            yield from self._subsets(avail, conflict, size - _popcount(required), required)

    def _subsets(self, avail: int, conflict: list[int], k: int, chosen: int) -> Iterator[int]:
        if k == 0:
            yield chosen
            return
        while avail and _popcount(avail) >= k:
            low = avail & -avail
            avail ^= low
            u = low.bit_length() - 1
            yield from self._subsets(avail & ~conflict[u], conflict, k - 1, chosen | low)

    def _accept(self, adj: list[int], degs: list[int], n: int):
        """Canonical-deletion test for the vertex ``n - 1``; returns canonical form or None."""
        v = n - 1
        delta = degs[v]
        mins = [u for u in range(n) if degs[u] == delta]

        def inv(u: int) -> tuple[int, ...]:
            x, ds = adj[u], []
            while x:
                low = x & -x
                x ^= low
                ds.append(degs[low.bit_length() - 1])
            return tuple(sorted(ds))

        if len(mins) > 1:
            invs = {u: inv(u) for u in mins}
            best = max(invs.values())
            if invs[v] != best:
                return None
            mins = [u for u in mins if invs[u] == best]
        pos, orbits = _canonical(adj, n)
        if len(mins) > 1:
            chosen = max(mins, key=lambda u: pos[u])
            if orbits[chosen] != orbits[v]:
                return None
        return _canonical_form(adj, n, pos)

    def run(self) -> Iterator[tuple[list[int], int]]:
        if self.V == 1:
            if self.req[1] <= 0:
                yield [0], 0
            return
        yield from self._extend([0], [0], 1, 0)

    def _extend(self, adj, degs, n, e) -> Iterator[tuple[list[int], int]]:
        self.nodes += 1
        seen: set = set()
        for w in self._neighbour_sets(adj, degs, n, e):
            size = _popcount(w)
            cadj = adj + [w]
            cdeg = degs + [size]
            x = w
            while x:
                low = x & -x
                x ^= low
                u = low.bit_length() - 1
                cadj[u] |= 1 << n
                cdeg[u] += 1
            form = self._accept(cadj, cdeg, n + 1)
            if form is None or form in seen:
                continue
            seen.add(form)
            if n + 1 == self.V:
                yield cadj, e + size
            else:
                yield from self._extend(cadj, cdeg, n + 1, e + size)


def _to_simple(adj: list[int]) -> SimpleGraph:
    n = len(adj)
    return SimpleGraph(n, tuple(tuple(w for w in range(n) if adj[u] >> w & 1) for u in range(n)))


def generate(spec: GenSpec, min_edges: int = 0) -> Iterator[SimpleGraph]:
    """One representative per isomorphism class meeting ``spec`` with >= min_edges edges."""
    gen = _Generator(spec, min_edges)
    for adj, _ in gen.run():
        g = _to_simple(adj)
        if spec.require_biconnected and not is_biconnected(g):
            continue
        yield g


def count_graphs(spec: GenSpec) -> int:
    return sum(1 for _ in generate(spec))


def satisfies(g: SimpleGraph, spec: GenSpec) -> bool:
    """Independent re-check of a witness against its spec."""
    if g.vertex_count != spec.vertex_count:
        return False
    if any(len(nb) > spec.max_degree for nb in g.adjacency):
        return False
    gg = girth(g)
    if gg != FOREST_GIRTH and gg < spec.min_girth:
        return False
    return not spec.require_biconnected or is_biconnected(g)


def max_edges(spec: GenSpec) -> tuple[int | None, SimpleGraph | None]:
    """Maximum edge count over graphs meeting ``spec`` and a witness.

    Thresholds are tried from the degree-sum ceiling downwards; the first
    threshold with a surviving graph is the maximum. Among maximum graphs the
    witness is the one with the lexicographically least canonical edge list.
    ``(None, None)`` means no graph meets the spec.
    """
    if spec.vertex_count > MAX_VERTICES:
        raise ValueError(f"generation limited to {MAX_VERTICES} vertices")
    V = spec.vertex_count
    top = min(V * spec.max_degree // 2, V * (V - 1) // 2)
    for target in range(top, -1, -1):
        best_form, best_graph = None, None
        gen = _Generator(spec, target)
        for adj, e in gen.run():
            if e != target:
                continue  # larger counts were already ruled out
            g = _to_simple(adj)
            if spec.require_biconnected and not is_biconnected(g):
                continue
            pos, _ = _canonical(adj, V)
            form = _canonical_form(adj, V, pos)
            if best_form is None or form < best_form:
                best_form, best_graph = form, _relabel(form, V)
        if best_graph is not None:
            return target, best_graph
    return None, None


def _relabel(form: tuple[tuple[int, int], ...], n: int) -> SimpleGraph:
    return SimpleGraph.from_edges(n, form)


def edge_floor_from_max(spec: GenSpec, degree: int) -> int:
    """Edges leaving a component of order ``|C|`` in a ``degree``-regular host."""
    if degree < spec.max_degree:
        raise ValueError("host degree must be at least the spec's max degree")
    m, _ = max_edges(spec)
    if m is None:
        raise ValueError(f"no graph satisfies {spec}")
    return degree * spec.vertex_count - 2 * m


@dataclass(frozen=True)
class TableRow:
    order: int
    max_edges: int | None
    edge_floor: int | None
    witness: SimpleGraph | None


def edge_table(orders: range, max_degree: int, min_girth: int, degree: int | None = None,
               require_biconnected: bool = True) -> list[TableRow]:
    degree = max_degree if degree is None else degree
    rows = []
    for t in orders:
        m, w = max_edges(GenSpec(t, max_degree, min_girth, require_biconnected))
        rows.append(TableRow(t, m, None if m is None else degree * t - 2 * m, w))
    return rows


def table_csv(rows: list[TableRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["|C|", "maxEdges", "edgeFloor"])
    for r in rows:
        writer.writerow([r.order, "" if r.max_edges is None else r.max_edges,
                         "" if r.edge_floor is None else r.edge_floor])
    return buf.getvalue()
