"""Independent brute-force references used by the tests.

Nothing here shares code with the library's search or flow routines:
graphs are plain adjacency sets and groups are probed through
``Group.multiply`` only.
"""

from __future__ import annotations

import itertools
import random
from collections import deque

from epgraph.graphs import Graph


def adjacency_sets(graph: Graph) -> list[set[int]]:
    return [set(graph.neighbors(v)) for v in range(graph.n)]


def naive_enhanced_edges(G) -> set[tuple[int, int]]:
    """Edges of the enhanced power graph from repeated multiplication."""
    edges = set()
    for w in range(G.order):
        cyc = [0]
        x = w
        while x != 0:
            cyc.append(x)
            x = G.multiply(x, w)
        for a, b in itertools.combinations(sorted(set(cyc)), 2):
            edges.add((a, b))
    return edges


def naive_order(G, g: int) -> int:
    t, x = 1, g
    while x != 0:
        x = G.multiply(x, g)
        t += 1
    return t


def bfs_components(adj: list[set[int]], alive=None) -> list[set[int]]:
    alive = set(range(len(adj))) if alive is None else set(alive)
    seen: set[int] = set()
    comps = []
    for s in sorted(alive):
        if s in seen:
            continue
        comp = {s}
        q = deque([s])
        while q:
            v = q.popleft()
            for u in adj[v]:
                if u in alive and u not in comp:
                    comp.add(u)
                    q.append(u)
        seen |= comp
        comps.append(comp)
    return comps


def exhaustive_domination(graph: Graph) -> int:
    """Smallest subset whose closed neighbourhoods cover everything."""
    n = graph.n
    if n == 0:
        return 0
    closed = [set(graph.neighbors(v)) | {v} for v in range(n)]
    everything = set(range(n))
    for k in range(1, n + 1):
        for sub in itertools.combinations(range(n), k):
            covered = set()
            for v in sub:
                covered |= closed[v]
            if covered == everything:
                return k
    raise AssertionError("unreachable")


def exhaustive_connectivity(graph: Graph) -> int:
    """Smallest vertex set whose removal disconnects (n-1 for complete graphs)."""
    n = graph.n
    adj = adjacency_sets(graph)
    if n <= 1:
        return 0
    if len(bfs_components(adj)) > 1:
        return 0
    for k in range(1, n - 1):
        for cut in itertools.combinations(range(n), k):
            alive = set(range(n)) - set(cut)
            if len(bfs_components(adj, alive)) > 1:
                return k
    return n - 1


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


def graph_with_dominators(rng: random.Random, n: int, p: float, r: int) -> Graph:
    """Random graph on ``n`` vertices where the first ``r`` vertices see everyone."""
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)
             if u < r or rng.random() < p]
    return Graph.from_edges(n, edges)
