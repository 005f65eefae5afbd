import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from epgraph.errors import BoundExceeded, SearchBudgetExceeded
from epgraph.graphs import Graph, enhanced_power_graph, proper_enhanced_power_graph
from epgraph.groups import build_group
from epgraph.metrics import (INFINITE, connected_components, diameter, distances_from,
                             domination_number_exact, dominating_vertices, eccentricity,
                             greedy_dominating_set, greedy_domination_upper, is_connected,
                             is_dominating_set, local_connectivity, metric_report,
                             vertex_connectivity)

from oracles import exhaustive_connectivity, exhaustive_domination, random_graph


def K(n):
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def C(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


STAR3 = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
EMPTY3 = Graph.from_edges(3, [])


def test_dominating_vertices():
    assert dominating_vertices(K(4)) == [0, 1, 2, 3]
    assert dominating_vertices(STAR3) == [0]
    G = build_group("Q8")
    assert dominating_vertices(enhanced_power_graph(G)) == [0, G.names.index("a^2")]


def test_components_and_diameter_basics():
    assert len(connected_components(C(5))) == 1 and diameter(C(5)) == 2
    assert diameter(Graph.from_edges(1, [])) == 0
    assert diameter(Graph.from_edges(0, [])) == 0
    assert diameter(EMPTY3) == INFINITE
    assert eccentricity(STAR3, 1) == 2
    assert distances_from(C(6), 0) == [0, 1, 2, 3, 2, 1]
    assert not is_connected(Graph.from_edges(0, []))


def test_proper_klein_four_components():
    P, _ = proper_enhanced_power_graph(build_group("Z2xZ2"))
    assert len(connected_components(P)) == 3


def test_proper_graph_of_mixed_abelian_has_diameter_three():
    P, _ = proper_enhanced_power_graph(build_group("Z2xZ2xZ3xZ3"))
    assert is_connected(P) and diameter(P) == 3
    assert diameter(P) == nx.diameter(P.to_networkx())


def test_domination_examples():
    assert domination_number_exact(STAR3) == 1
    assert domination_number_exact(EMPTY3) == 3
    assert domination_number_exact(Graph.from_edges(0, [])) == 0
    P, _ = proper_enhanced_power_graph(build_group("Z2xZ4"))
    assert domination_number_exact(P) == 3


def test_greedy_examples():
    assert greedy_domination_upper(K(4)) == 1
    assert greedy_domination_upper(C(5)) == 2
    P, _ = proper_enhanced_power_graph(build_group("Z2xZ2"))
    assert greedy_domination_upper(P) == 3
    assert greedy_dominating_set(STAR3) == [0]


def test_domination_cap_and_budget():
    big = C(50)
    with pytest.raises(BoundExceeded):
        domination_number_exact(big, limit=10)
    g = random_graph(random.Random(1), 60, 0.1)
    with pytest.raises(SearchBudgetExceeded) as exc:
        domination_number_exact(g, node_budget=3)
    gamma = domination_number_exact(g)
    assert exc.value.lower <= gamma <= exc.value.upper


def test_domination_on_cycles():
    for n in range(3, 40):
        assert domination_number_exact(C(n)) == -(-n // 3)


def test_connectivity_examples():
    assert vertex_connectivity(K(4)) == 3
    assert vertex_connectivity(C(5)) == 2
    assert vertex_connectivity(enhanced_power_graph(build_group("Z2xZ2"))) == 1
    assert vertex_connectivity(EMPTY3) == 0
    assert vertex_connectivity(Graph.from_edges(1, [])) == 0
    assert vertex_connectivity(K(2)) == 1
    with pytest.raises(BoundExceeded):
        vertex_connectivity(C(20), max_n=10)


def test_local_connectivity():
    assert local_connectivity(C(6), 0, 3) == 2
    with pytest.raises(ValueError):
        local_connectivity(C(6), 0, 1)


def test_connectivity_with_dominating_vertices_matches_networkx():
    rng = random.Random(5)
    for _ in range(40):
        n = rng.randint(4, 25)
        r = rng.randint(1, 3)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if u < r or rng.random() < 0.3]
        g = Graph.from_edges(n, edges)
        assert vertex_connectivity(g) == nx.node_connectivity(g.to_networkx())


def test_connectivity_matches_networkx_on_group_graphs():
    for spec in ["Z2xZ4", "Z2xZ2xZ3", "Q8xZ3", "D8", "Z3xZ3xZ2xZ2", "Q16"]:
        E = enhanced_power_graph(build_group(spec))
        assert vertex_connectivity(E) == nx.node_connectivity(E.to_networkx()), spec


def test_metric_report():
    P, _ = proper_enhanced_power_graph(build_group("Z2xZ4"))
    rep = metric_report(P)
    d = rep.as_dict(P.labels)
    assert d["component_count"] == 3 and d["diameter"] == "inf"
    assert d["domination_number"] == 3 and d["vertex_connectivity"] == 0
    assert sum(d["component_sizes"]) == P.n
    rep = metric_report(C(30), gamma_n=10, flow_n=10)
    assert rep.domination_number is None and rep.vertex_connectivity is None


# -- oracles on random graphs --------------------------------------------------

def test_domination_matches_subset_enumeration():
    rng = random.Random(2024)
    for _ in range(200):
        g = random_graph(rng, rng.randint(1, 12), rng.uniform(0.05, 0.8))
        assert domination_number_exact(g) == exhaustive_domination(g)


def test_connectivity_matches_exhaustive_removal():
    rng = random.Random(7)
    for _ in range(100):
        g = random_graph(rng, rng.randint(1, 10), rng.uniform(0.1, 0.95))
        assert vertex_connectivity(g) == exhaustive_connectivity(g)


@st.composite
def graphs(draw, max_n=11):
    n = draw(st.integers(1, max_n))
    p = draw(st.floats(0.0, 1.0))
    seed = draw(st.integers(0, 10 ** 6))
    return random_graph(random.Random(seed), n, p)


@given(graphs())
@settings(max_examples=150, deadline=None)
def test_metric_invariants(g):
    gamma = domination_number_exact(g)
    assert greedy_domination_upper(g) >= gamma >= 1
    if g.is_complete():
        assert greedy_domination_upper(g) == gamma == 1
    comps = connected_components(g)
    d = diameter(g)
    assert (d != INFINITE) == (len(comps) == 1)
    if g.n >= 2:
        assert (d == 1) == g.is_complete()
    kappa = vertex_connectivity(g)
    assert (kappa == 0) == (len(comps) > 1 or g.n == 1)
    assert kappa <= min(g.degrees())
    assert is_dominating_set(g, greedy_dominating_set(g))
