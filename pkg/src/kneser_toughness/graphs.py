"""Kneser graph construction and small-graph analysis.

Vertices of K(n,k) are k-subsets of {0..n-1} stored as bitmasks; the vertex
index is the co-lex rank of the mask, which is simply numeric mask order.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .combinatorics import binomial

DEFAULT_VERTEX_CAP = 10**6
FOREST_GIRTH = 0  # girth() sentinel for acyclic graphs


class GraphError(ValueError):
    pass


class ResourceCapExceeded(GraphError):
    pass


@dataclass(frozen=True)
class KneserParams:
    n: int
    k: int

    def __post_init__(self) -> None:
        if self.k < 2 or self.n < 2 * self.k + 1:
            raise ValueError(f"K({self.n},{self.k}) needs n >= 2k+1 >= 5")
        if self.n > 63:
            raise ValueError("n > 63 does not fit a machine-word bitmask")

    @property
    def order(self) -> int:
        return binomial(self.n, self.k)

    @property
    def degree(self) -> int:
        return binomial(self.n - self.k, self.k)

    @property
    def ekr(self) -> int:
        return binomial(self.n - 1, self.k - 1)

    @property
    def girth(self) -> int:
        """Girth of K(n,k) from its closed form; ``girth()`` is the BFS check."""
        n, k = self.n, self.k
        if n >= 3 * k:
            return 3
        if n >= 2 * k + 2:
            return 4
        return 5 if k == 2 else 6

    def __str__(self) -> str:
        return f"K({self.n},{self.k})"


@dataclass(frozen=True)
class SimpleGraph:
    vertex_count: int
    adjacency: tuple[tuple[int, ...], ...]
    labels: tuple[int, ...] | None = field(default=None, compare=False)

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[tuple[int, int]]) -> "SimpleGraph":
        nbrs: list[set[int]] = [set() for _ in range(vertex_count)]
        for u, v in edges:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(vertex_count, tuple(tuple(sorted(s)) for s in nbrs))

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, nb in enumerate(self.adjacency) for v in nb if u < v]

    def masks(self) -> list[int]:
        """Neighbourhoods as bitmasks over vertex indices."""
        out = []
        for nb in self.adjacency:
            m = 0
            for v in nb:
                m |= 1 << v
            out.append(m)
        return out


def ksubset_masks(n: int, k: int) -> list[int]:
    """All k-subsets of an n-set as bitmasks in co-lex (numeric) order."""
    if k == 0:
        return [0]
    out = []
    x = (1 << k) - 1
    limit = 1 << n
    while x < limit:
        out.append(x)
        # Gosper's hack: next integer with the same popcount
        low = x & -x
        ripple = x + low
        x = (((ripple ^ x) >> 2) // low) | ripple
    return out


def colex_rank(mask: int) -> int:
    rank, i, pos = 0, 1, 0
    while mask:
        if mask & 1:
            rank += binomial(pos, i)
            i += 1
        mask >>= 1
        pos += 1
    return rank


def build_kneser(params: KneserParams, vertex_cap: int = DEFAULT_VERTEX_CAP) -> SimpleGraph:
    n, k = params.n, params.k
    if params.order > vertex_cap:
        raise ResourceCapExceeded(f"{params} has {params.order} vertices (cap {vertex_cap})")
    masks = ksubset_masks(n, k)
    index = {m: i for i, m in enumerate(masks)}
    adjacency = []
    for m in masks:
        comp = [i for i in range(n) if not m >> i & 1]
        nb = sorted(index[sum(1 << i for i in sub)] for sub in combinations(comp, k))
        adjacency.append(tuple(nb))
    return SimpleGraph(len(masks), tuple(adjacency), labels=tuple(masks))


def mask_to_set(mask: int) -> tuple[int, ...]:
    return tuple(i for i in range(mask.bit_length()) if mask >> i & 1)


def girth(g: SimpleGraph) -> int:
    """Length of a shortest cycle, or ``FOREST_GIRTH`` when there is none."""
    best = None
    for root in range(g.vertex_count):
        dist = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if best is not None and 2 * dist[u] + 1 >= best:
                break
            for w in g.adjacency[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    length = dist[u] + dist[w] + 1
                    if best is None or length < best:
                        best = length
    return FOREST_GIRTH if best is None else best


def _components(g: SimpleGraph, alive: Sequence[bool]) -> list[list[int]]:
    seen = [False] * g.vertex_count
    comps = []
    for s in range(g.vertex_count):
        if not alive[s] or seen[s]:
            continue
        seen[s] = True
        comp = [s]
        stack = [s]
        while stack:
            u = stack.pop()
            for w in g.adjacency[u]:
                if alive[w] and not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def articulation_points(g: SimpleGraph, vertices: Iterable[int] | None = None) -> set[int]:
    """Cut vertices of the subgraph induced on ``vertices`` (default: all)."""
    alive = [False] * g.vertex_count
    for v in range(g.vertex_count) if vertices is None else vertices:
        alive[v] = True
    disc = [-1] * g.vertex_count
    low = [0] * g.vertex_count
    cuts: set[int] = set()
    timer = 0
    for root in range(g.vertex_count):
        if not alive[root] or disc[root] >= 0:
            continue
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        stack = [(root, -1, iter(g.adjacency[root]))]
        while stack:
            u, par, it = stack[-1]
            advanced = False
            for w in it:
                if not alive[w]:
                    continue
                if disc[w] < 0:
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, u, iter(g.adjacency[w])))
                    advanced = True
                    break
                if w != par:
                    low[u] = min(low[u], disc[w])
            if advanced:
                continue
            stack.pop()
            if par >= 0:
                low[par] = min(low[par], low[u])
                if par == root:
                    root_children += 1
                elif low[u] >= disc[par]:
                    cuts.add(par)
        if root_children > 1:
            cuts.add(root)
    return cuts


def is_biconnected(g: SimpleGraph, vertices: Iterable[int] | None = None) -> bool:
    """Connected, at least two vertices, no cut vertex (K2 counts as biconnected)."""
    verts = list(range(g.vertex_count)) if vertices is None else list(vertices)
    if len(verts) < 2:
        return False
    alive = [False] * g.vertex_count
    for v in verts:
        alive[v] = True
    if len(_components(g, alive)) != 1:
        return False
    return not articulation_points(g, verts)


def is_connected(g: SimpleGraph) -> bool:
    return len(_components(g, [True] * g.vertex_count)) <= 1


@dataclass(frozen=True)
class ComponentReport:
    count: int
    sizes: tuple[int, ...]
    biconnected: tuple[bool, ...]
    boundary_edges: int
    components: tuple[tuple[int, ...], ...]

    def component_shapes_ok(self) -> bool:
        """Every component is a singleton, a K2 or biconnected."""
        return all(s <= 2 or b for s, b in zip(self.sizes, self.biconnected))


def analyze_removal(g: SimpleGraph, cut: Iterable[int]) -> ComponentReport:
    cut_set = set(cut)
    if len(cut_set) >= g.vertex_count:
        raise GraphError("cut must be a proper subset of the vertices")
    alive = [v not in cut_set for v in range(g.vertex_count)]
    comps = _components(g, alive)
    boundary = sum(1 for u in cut_set for w in g.adjacency[u] if alive[w])
    return ComponentReport(
        count=len(comps),
        sizes=tuple(len(c) for c in comps),
        biconnected=tuple(is_biconnected(g, c) for c in comps),
        boundary_edges=boundary,
        components=tuple(tuple(c) for c in comps),
    )


def _count_components(masks: list[int], keep: int) -> int:
    count = 0
    while keep:
        frontier = keep & -keep
        comp = frontier
        while frontier:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= masks[low.bit_length() - 1]
                f ^= low
            frontier = nxt & keep & ~comp
            comp |= frontier
        keep &= ~comp
        count += 1
    return count


BRUTE_FORCE_TOUGHNESS_CAP = 24
MIS_VERTEX_CAP = 128


def brute_force_toughness(g: SimpleGraph) -> tuple[Fraction, tuple[int, ...]]:
    """Exact toughness by enumerating every vertex subset.

    Returns the minimum ratio and the first minimising cut in increasing
    bitmask order.
    """
    n = g.vertex_count
    if n > BRUTE_FORCE_TOUGHNESS_CAP:
        raise ResourceCapExceeded(f"{n} vertices exceeds brute-force cap {BRUTE_FORCE_TOUGHNESS_CAP}")
    if all(len(nb) == n - 1 for nb in g.adjacency):
        raise GraphError("complete graph has no vertex cut")
    if not is_connected(g):
        raise GraphError("toughness is defined for connected graphs")
    masks = g.masks()
    full = (1 << n) - 1
    best_s, best_c, best_cut = None, None, 0
    for cut in range(1, full):
        keep = full & ~cut
        if keep & (keep - 1) == 0:
            continue  # fewer than two survivors cannot be disconnected
        c = _count_components(masks, keep)
        if c < 2:
            continue
        s = bin(cut).count("1")
        if best_s is None or s * best_c < best_s * c:
            best_s, best_c, best_cut = s, c, cut
    assert best_s is not None
    return Fraction(best_s, best_c), tuple(v for v in range(n) if best_cut >> v & 1)


def brute_force_max_independent_set(g: SimpleGraph) -> tuple[int, tuple[int, ...]]:
    """Exact independence number by branch and bound over bitmasks."""
    if g.vertex_count > MIS_VERTEX_CAP:
        raise ResourceCapExceeded(f"branch and bound is limited to {MIS_VERTEX_CAP} vertices")
    masks = g.masks()
    best = [0, 0]

    def clique_cover_bound(p: int) -> int:
        # greedy partition into cliques; each clique holds at most one chosen vertex
        bound = 0
        while p:
            low = p & -p
            v = low.bit_length() - 1
            clique = low
            cand = p & masks[v]
            while cand:
                w = (cand & -cand).bit_length() - 1
                clique |= 1 << w
                cand &= masks[w]
            p &= ~clique
            bound += 1
        return bound

    def search(p: int, chosen: int, size: int) -> None:
        # forced picks: vertices with at most one neighbour left in p
        changed = True
        while changed:
            changed = False
            q = p
            while q:
                low = q & -q
                q ^= low
                v = low.bit_length() - 1
                if not p & low:
                    continue
                if bin(masks[v] & p).count("1") <= 1:
                    chosen |= low
                    size += 1
                    p &= ~(low | masks[v])
                    changed = True
        if not p:
            if size > best[0]:
                best[0], best[1] = size, chosen
            return
        if size + clique_cover_bound(p) <= best[0]:
            return
        q, v, vdeg = p, -1, -1
        while q:
            low = q & -q
            q ^= low
            u = low.bit_length() - 1
            d = bin(masks[u] & p).count("1")
            if d > vdeg:
                v, vdeg = u, d
        bit = 1 << v
        search(p & ~(bit | masks[v]), chosen | bit, size + 1)
        search(p & ~bit, chosen, size)

    search((1 << g.vertex_count) - 1, 0, 0)
    witness = tuple(v for v in range(g.vertex_count) if best[1] >> v & 1)
    return best[0], witness


def edge_connectivity(g: SimpleGraph) -> int:
    import networkx as nx

    G = nx.Graph()
    G.add_nodes_from(range(g.vertex_count))
    G.add_edges_from(g.edges())
    return nx.edge_connectivity(G)


EDGE_CONNECTIVITY_CAP = 300
NEIGHBORHOOD_CHECK_EDGE_CAP = 2 * 10**6


@dataclass(frozen=True)
class CheckReport:
    params: KneserParams
    closed_neighborhood_connected: bool | None
    components_after_open_neighborhood: int | None
    edge_connectivity: int | None
    skipped: tuple[str, ...]

    @property
    def passed(self) -> bool:
        ok = self.closed_neighborhood_connected is not False
        if self.edge_connectivity is not None:
            ok = ok and self.edge_connectivity == self.params.degree
        return ok


def structural_checks(params: KneserParams) -> CheckReport:
    """Closed-neighbourhood deletion and edge connectivity on small instances."""
    skipped = []
    closed_ok = None
    open_c = None
    edge_conn = None
    if params.order * params.degree // 2 <= NEIGHBORHOOD_CHECK_EDGE_CAP:
        g = build_kneser(params)
        u = 0
        removed = set(g.adjacency[u])
        open_c = analyze_removal(g, removed).count
        closed_ok = analyze_removal(g, removed | {u}).count == 1
        if g.vertex_count <= EDGE_CONNECTIVITY_CAP:
            edge_conn = edge_connectivity(g)
        else:
            skipped.append("edge-connectivity")
    else:
        skipped.extend(["closed-neighborhood", "edge-connectivity"])
    return CheckReport(params, closed_ok, open_c, edge_conn, tuple(skipped))


def export_edge_list(g: SimpleGraph) -> str:
    edges = g.edges()
    lines = [f"{g.vertex_count} {len(edges)}"]
    lines.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> SimpleGraph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    n, m = int(rows[0][0]), int(rows[0][1])
    edges = [(int(a), int(b)) for a, b in rows[1:]]
    if len(edges) != m:
        raise GraphError(f"header announces {m} edges, found {len(edges)}")
    return SimpleGraph.from_edges(n, edges)
