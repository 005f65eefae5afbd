"""Exact graph invariants on bitset graphs.

Everything here is deterministic: ties are broken by lowest vertex index.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

from .errors import BoundExceeded, SearchBudgetExceeded
from .graphs import Graph, bits, dominating_mask, induced_subgraph

INFINITE = math.inf

DEFAULT_GAMMA_N = 400
DEFAULT_FLOW_N = 300
DEFAULT_NODE_BUDGET = 2_000_000


def dominating_vertices(graph: Graph) -> list[int]:
    """Vertices adjacent to every other vertex."""
    return list(bits(dominating_mask(graph)))


def _component_masks(graph: Graph) -> list[int]:
    adj = graph.adj
    unseen = graph.full
    comps = []
    while unseen:
        s = (unseen & -unseen).bit_length() - 1
        comp = frontier = 1 << s
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= adj[v]
            frontier = nxt & ~comp
            comp |= frontier
        comps.append(comp)
        unseen &= ~comp
    return comps


def connected_components(graph: Graph) -> list[list[int]]:
    """Components as sorted vertex lists, ordered by their smallest vertex."""
    return [list(bits(c)) for c in _component_masks(graph)]


def is_connected(graph: Graph) -> bool:
    return graph.n > 0 and len(_component_masks(graph)) == 1


def eccentricity(graph: Graph, source: int) -> float:
    adj = graph.adj
    seen = frontier = 1 << source
    d = 0
    while True:
        nxt = 0
        for v in bits(frontier):
            nxt |= adj[v]
        frontier = nxt & ~seen
        if not frontier:
            break
        seen |= frontier
        d += 1
    return d if seen == graph.full else INFINITE


def diameter(graph: Graph) -> float:
    """Largest BFS distance; ``INFINITE`` when disconnected, 0 on <= 1 vertex."""
    if graph.n <= 1:
        return 0
    if len(_component_masks(graph)) > 1:
        return INFINITE
    return max(eccentricity(graph, s) for s in range(graph.n))


def distances_from(graph: Graph, source: int) -> list[float]:
    dist = [INFINITE] * graph.n
    dist[source] = 0
    q = deque([source])
    while q:
        v = q.popleft()
        for u in bits(graph.adj[v]):
            if dist[u] == INFINITE:
                dist[u] = dist[v] + 1
                q.append(u)
    return dist


# ---------------------------------------------------------------------------
# Domination
# ---------------------------------------------------------------------------

def _closed(graph: Graph) -> list[int]:
    return [a | (1 << v) for v, a in enumerate(graph.adj)]


def greedy_dominating_set(graph: Graph) -> list[int]:
    """Repeatedly take the vertex covering most undominated vertices (lowest index on ties)."""
    closed = _closed(graph)
    todo = graph.full
    chosen = []
    while todo:
        best_v, best_c = -1, -1
        for v, c in enumerate(closed):
            k = (c & todo).bit_count()
            if k > best_c:
                best_v, best_c = v, k
        chosen.append(best_v)
        todo &= ~closed[best_v]
    return chosen


def greedy_domination_upper(graph: Graph) -> int:
    return len(greedy_dominating_set(graph))


class _DomSearch:
    """Branch and bound for the domination number of one component."""

    def __init__(self, closed: list[int], comp: int, budget: int):
        self.closed = closed
        self.verts = list(bits(comp))
        self.budget = budget
        self.nodes = 0
        # vertices ordered so the packing bound tries tightly-dominated ones first
        self.by_size = sorted(self.verts, key=lambda v: (closed[v].bit_count(), v))

    def greedy(self, todo: int) -> int:
        closed = self.closed
        k = 0
        while todo:
            best_v, best_c = -1, -1
            for v in self.verts:
                c = (closed[v] & todo).bit_count()
                if c > best_c:
                    best_v, best_c = v, c
            todo &= ~closed[best_v]
            k += 1
        return k

    def packing(self, todo: int) -> int:
        """Undominated vertices with pairwise disjoint closed neighbourhoods."""
        closed = self.closed
        used = 0
        k = 0
        for u in self.by_size:
            if todo >> u & 1 and not closed[u] & used:
                used |= closed[u]
                k += 1
        return k

    def cover_bound(self, todo: int) -> int:
        closed = self.closed
        cnt = todo.bit_count()
        best = max((closed[v] & todo).bit_count() for v in self.verts)
        return -(-cnt // best)

    def run(self) -> int:
        comp = 0
        for v in self.verts:
            comp |= 1 << v
        self.best = self.greedy(comp)
        self.lower = max(self.packing(comp), self.cover_bound(comp))
        if self.lower < self.best:
            self._rec(comp, 0)
        return self.best

    def _rec(self, todo: int, k: int) -> None:
        if not todo:
            self.best = k
            return
        self.nodes += 1
        if self.nodes > self.budget:
            raise SearchBudgetExceeded(self.lower, self.best, self.budget)
        room = self.best - k
        if self.packing(todo) >= room or self.cover_bound(todo) >= room:
            return
        closed = self.closed
        # branch on the undominated vertex with the fewest possible dominators
        u = min(bits(todo), key=lambda v: (closed[v].bit_count(), v))
        options = sorted(bits(closed[u]), key=lambda w: (-(closed[w] & todo).bit_count(), w))
        for w in options:
            if k + 1 >= self.best:
                return
            self._rec(todo & ~closed[w], k + 1)


def domination_number_exact(graph: Graph, limit: int | None = None,
                            node_budget: int = DEFAULT_NODE_BUDGET) -> int:
    """Exact domination number by branch and bound.

    ``limit`` caps the vertex count (default 400).  Components are solved
    independently and summed.  The empty graph has domination number 0.
    """
    cap = DEFAULT_GAMMA_N if limit is None else limit
    if graph.n > cap:
        raise BoundExceeded(f"domination search limited to {cap} vertices, graph has {graph.n}")
    closed = _closed(graph)
    total = 0
    for comp in _component_masks(graph):
        if comp.bit_count() <= 2:
            total += 1
            continue
        total += _DomSearch(closed, comp, node_budget).run()
    return total


def is_dominating_set(graph: Graph, vertices) -> bool:
    covered = 0
    for v in vertices:
        covered |= graph.adj[v] | (1 << v)
    return covered == graph.full


# ---------------------------------------------------------------------------
# Vertex connectivity
# ---------------------------------------------------------------------------

class _SplitNetwork:
    """Unit-capacity split network: ``v_in = 2v -> v_out = 2v+1``, edges ``u_out -> v_in``."""

    def __init__(self, graph: Graph):
        n = graph.n
        self.head: list[int] = []
        self.cap: list[int] = []
        self.out: list[list[int]] = [[] for _ in range(2 * n)]
        for v in range(n):
            self._arc(2 * v, 2 * v + 1)
        for u, v in graph.edges():
            self._arc(2 * u + 1, 2 * v)
            self._arc(2 * v + 1, 2 * u)

    def _arc(self, a: int, b: int) -> None:
        self.out[a].append(len(self.head))
        self.head.append(b)
        self.cap.append(1)
        self.out[b].append(len(self.head))
        self.head.append(a)
        self.cap.append(0)

    def max_flow(self, s: int, t: int, cutoff: int) -> int:
        """Internally disjoint ``s``-``t`` paths, stopping once ``cutoff`` is reached."""
        src, snk = 2 * s + 1, 2 * t
        res = list(self.cap)
        head, out = self.head, self.out
        flow = 0
        while flow < cutoff:
            prev = {src: -1}
            q = deque([src])
            found = False
            while q and not found:
                a = q.popleft()
                for e in out[a]:
                    if res[e]:
                        b = head[e]
                        if b not in prev:
                            prev[b] = e
                            if b == snk:
                                found = True
                                break
                            q.append(b)
            if not found:
                break
            b = snk
            while b != src:
                e = prev[b]
                res[e] -= 1
                res[e ^ 1] += 1
                b = head[e ^ 1]
            flow += 1
        return flow


def local_connectivity(graph: Graph, s: int, t: int, cutoff: int | None = None) -> int:
    if graph.has_edge(s, t) or s == t:
        raise ValueError("local connectivity needs two distinct non-adjacent vertices")
    return _SplitNetwork(graph).max_flow(s, t, cutoff if cutoff is not None else graph.n)


def vertex_connectivity(graph: Graph, max_n: int = DEFAULT_FLOW_N) -> int:
    """Exact vertex connectivity via unit-capacity max flow.

    Dominating vertices lie in every separator, so they are peeled off
    first; the remaining graph is handled with a pair cover around a
    minimum-degree vertex.
    """
    n = graph.n
    if n > max_n:
        raise BoundExceeded(f"vertex connectivity limited to {max_n} vertices, graph has {n}")
    if n <= 1:
        return 0
    if graph.is_complete():
        return n - 1
    if len(_component_masks(graph)) > 1:
        return 0
    dom = dominating_mask(graph)
    if dom:
        rest = [v for v in range(n) if not dom >> v & 1]
        return dom.bit_count() + vertex_connectivity(induced_subgraph(graph, rest), max_n)
    degs = graph.degrees()
    v = min(range(n), key=lambda x: (degs[x], x))
    best = degs[v]
    net = _SplitNetwork(graph)
    for u in bits(graph.full & ~graph.adj[v] & ~(1 << v)):
        best = min(best, net.max_flow(v, u, best))
        if best == 0:
            return 0
    nbrs = graph.neighbors(v)
    for i, x in enumerate(nbrs):
        for y in nbrs[i + 1:]:
            if not graph.has_edge(x, y):
                best = min(best, net.max_flow(x, y, best))
    return best


# ---------------------------------------------------------------------------
# Report
# ---------------------------------------------------------------------------

@dataclass
class MetricReport:
    n: int
    dom_vertices: list = field(default_factory=list)
    component_count: int = 0
    components: list = field(default_factory=list)
    diameter: float = 0
    domination_number: int | None = None
    vertex_connectivity: int | None = None

    def as_dict(self, labels=None) -> dict:
        name = (lambda v: labels[v]) if labels is not None else (lambda v: v)
        return {
            "n": self.n,
            "dom_vertices": [name(v) for v in self.dom_vertices],
            "component_count": self.component_count,
            "component_sizes": [len(c) for c in self.components],
            "diameter": "inf" if self.diameter == INFINITE else self.diameter,
            "domination_number": self.domination_number,
            "vertex_connectivity": self.vertex_connectivity,
        }


def metric_report(graph: Graph, gamma_n: int = DEFAULT_GAMMA_N,
                  flow_n: int = DEFAULT_FLOW_N) -> MetricReport:
    """All invariants; gamma and kappa are left as ``None`` above their caps."""
    comps = connected_components(graph)
    gamma = kappa = None
    if graph.n <= gamma_n:
        try:
            gamma = domination_number_exact(graph, limit=gamma_n)
        except SearchBudgetExceeded:
            gamma = None
    if graph.n <= flow_n:
        kappa = vertex_connectivity(graph, max_n=flow_n)
    return MetricReport(
        n=graph.n,
        dom_vertices=dominating_vertices(graph),
        component_count=len(comps),
        components=comps,
        diameter=diameter(graph),
        domination_number=gamma,
        vertex_connectivity=kappa,
    )
