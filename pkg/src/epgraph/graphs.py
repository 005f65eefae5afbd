"""Graphs on group elements: enhanced power, power and commuting graphs.

A :class:`Graph` keeps its adjacency as one Python ``int`` bitset per
vertex, so neighbourhood unions and intersections are single big-int ops.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import EmptyGraphError, EpgError
from .groups import Group


def bits(mask: int):
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << int(i)
    return m


def _mask_from_array(idx: np.ndarray, n: int) -> int:
    flags = np.zeros(n, dtype=bool)
    flags[idx] = True
    return int.from_bytes(np.packbits(flags, bitorder="little").tobytes(), "little")


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``."""

    adj: tuple
    labels: tuple

    def __post_init__(self):
        if len(self.adj) != len(self.labels):
            raise EpgError("vertex count and label count differ")

    @property
    def n(self) -> int:
        return len(self.adj)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [a.bit_count() for a in self.adj]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def edge_count(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u, a in enumerate(self.adj):
            for v in bits(a >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    def edge_set(self) -> set[tuple[int, int]]:
        return set(self.edges())

    def is_complete(self) -> bool:
        full = self.full
        return all(a | (1 << v) == full for v, a in enumerate(self.adj))

    def check(self) -> None:
        for v, a in enumerate(self.adj):
            if a >> v & 1:
                raise EpgError(f"self-loop at vertex {v}")
            for u in bits(a):
                if not self.adj[u] >> v & 1:
                    raise EpgError(f"adjacency not symmetric for {u}-{v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], labels=None) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if u == v:
                continue
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(tuple(adj), tuple(labels) if labels is not None else tuple(map(str, range(n))))

    def to_networkx(self):
        import networkx as nx
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges())
        return g


# ---------------------------------------------------------------------------
# Group graphs
# ---------------------------------------------------------------------------

def enhanced_power_graph(G: Group, dedupe: bool = True) -> Graph:
    """``x ~ y`` iff some cyclic subgroup contains both.

    With ``dedupe`` only maximal cyclic subgroups are expanded: elements are
    visited by decreasing order and skipped once they lie inside an
    already expanded cyclic subgroup.  Output is identical either way.
    """
    n = G.order
    adj = [0] * n
    covered = np.zeros(n, dtype=bool)
    order = np.argsort(-G.order_of, kind="stable") if dedupe else range(n)
    for w in order:
        w = int(w)
        if dedupe and covered[w]:
            continue
        members = G.powers(w)
        covered[members] = True
        m = _mask_from_array(members, n)
        for x in members.tolist():
            adj[x] |= m
    for v in range(n):
        adj[v] &= ~(1 << v)
    return Graph(tuple(adj), tuple(G.names))


def power_graph(G: Group) -> Graph:
    """``x ~ y`` iff one of them is a power of the other."""
    n = G.order
    adj = [0] * n
    for x in range(n):
        members = G.powers(x)
        adj[x] |= _mask_from_array(members, n)
        bit = 1 << x
        for y in members.tolist():
            adj[y] |= bit
    for v in range(n):
        adj[v] &= ~(1 << v)
    return Graph(tuple(adj), tuple(G.names))


def commuting_graph_full(G: Group) -> Graph:
    """``x ~ y`` iff ``xy = yx`` (all elements kept, central ones included)."""
    n = G.order
    idx = np.arange(n, dtype=np.int64)
    adj = []
    for x in range(n):
        comm = np.flatnonzero(G.mul_vec(x, idx) == G.mul_vec(idx, x))
        adj.append(_mask_from_array(comm, n) & ~(1 << x))
    return Graph(tuple(adj), tuple(G.names))


def dominating_mask(graph: Graph) -> int:
    full = graph.full
    m = 0
    for v, a in enumerate(graph.adj):
        if a | (1 << v) == full:
            m |= 1 << v
    return m


def proper_enhanced_power_graph(G: Group, allow_empty: bool = False,
                                graph: Graph | None = None) -> tuple[Graph, list[int]]:
    """Enhanced power graph with its dominating vertices deleted.

    Returns ``(proper_graph, removed)`` where ``removed`` lists the deleted
    (dominating) vertices.  For cyclic groups every vertex dominates; this
    raises :class:`EmptyGraphError` unless ``allow_empty`` is set.
    """
    full = graph if graph is not None else enhanced_power_graph(G)
    dom = dominating_mask(full)
    removed = list(bits(dom))
    keep = [v for v in range(full.n) if not dom >> v & 1]
    if not keep and not allow_empty:
        raise EmptyGraphError(f"{G.display_name}: every vertex is dominating "
                              "(the group is cyclic)")
    return induced_subgraph(full, keep), removed


# ---------------------------------------------------------------------------
# Generic graph operations
# ---------------------------------------------------------------------------

def complement(graph: Graph) -> Graph:
    full = graph.full
    return Graph(tuple((~a & full) & ~(1 << v) for v, a in enumerate(graph.adj)), graph.labels)


def induced_subgraph(graph: Graph, vertices: Iterable[int]) -> Graph:
    """Subgraph on ``vertices`` (kept in increasing order, then reindexed)."""
    keep = sorted(set(int(v) for v in vertices))
    pos = {v: i for i, v in enumerate(keep)}
    keep_mask = mask_of(keep)
    adj = []
    for v in keep:
        a = 0
        for u in bits(graph.adj[v] & keep_mask):
            a |= 1 << pos[u]
        adj.append(a)
    return Graph(tuple(adj), tuple(graph.labels[v] for v in keep))


def remove_isolated(graph: Graph) -> Graph:
    return induced_subgraph(graph, [v for v, a in enumerate(graph.adj) if a])


def relabel(graph: Graph, perm: Sequence[int]) -> Graph:
    """Graph with vertex ``v`` moved to position ``perm[v]``."""
    n = graph.n
    adj = [0] * n
    labels = [None] * n
    for v in range(n):
        labels[perm[v]] = graph.labels[v]
        adj[perm[v]] = mask_of(perm[u] for u in bits(graph.adj[v]))
    return Graph(tuple(adj), tuple(labels))


# ---------------------------------------------------------------------------
# Export / import
# ---------------------------------------------------------------------------

def to_edge_list(graph: Graph) -> str:
    lines = [f"{graph.n} {graph.edge_count()}"]
    lines += [f"{u} {v}" for u, v in graph.edges()]
    return "\n".join(lines) + "\n"


def read_edge_list(text: str, labels=None) -> Graph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not rows:
        raise EpgError("empty edge list")
    n, m = int(rows[0][0]), int(rows[0][1])
    edges = [(int(a), int(b)) for a, b in rows[1:]]
    if len(edges) != m:
        raise EpgError(f"header promises {m} edges, found {len(edges)}")
    return Graph.from_edges(n, edges, labels)


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def to_dot(graph: Graph, name: str = "G") -> str:
    out = [f'graph "{_dot_escape(name)}" {{']
    for v, lab in enumerate(graph.labels):
        out.append(f'  {v} [label="{_dot_escape(lab)}"];')
    for u, v in graph.edges():
        out.append(f"  {u} -- {v};")
    out.append("}")
    return "\n".join(out) + "\n"


_DOT_NODE = re.compile(r'^\s*(\d+)\s*\[label="((?:[^"\\]|\\.)*)"\];\s*$')
_DOT_EDGE = re.compile(r"^\s*(\d+)\s*--\s*(\d+);\s*$")


def read_dot(text: str) -> Graph:
    """Read back the DOT subset written by :func:`to_dot`."""
    labels = {}
    edges = []
    for line in text.splitlines():
        if m := _DOT_NODE.match(line):
            labels[int(m.group(1))] = re.sub(r"\\(.)", r"\1", m.group(2))
        elif m := _DOT_EDGE.match(line):
            edges.append((int(m.group(1)), int(m.group(2))))
    n = len(labels)
    if sorted(labels) != list(range(n)):
        raise EpgError("DOT vertices must be numbered 0..n-1")
    return Graph.from_edges(n, edges, [labels[i] for i in range(n)])


def to_json_dict(graph: Graph) -> dict:
    return {"n": graph.n, "labels": list(graph.labels),
            "edges": [list(e) for e in graph.edges()]}


def read_json(text: str) -> Graph:
    data = json.loads(text)
    return Graph.from_edges(data["n"], [tuple(e) for e in data["edges"]], data["labels"])
