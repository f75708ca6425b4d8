import random

import networkx as nx
from hypothesis import given, strategies as st

from votedim.clique import degeneracy_order, greedy_clique, max_clique


def _adj(n, edges):
    adj = [0] * n
    for a, b in edges:
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    return adj


def _is_clique(adj, vs):
    return all(adj[a] >> b & 1 for a in vs for b in vs if a != b)


def _random_graph(n, p, seed):
    rng = random.Random(seed)
    return [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < p]


@given(st.integers(1, 40), st.floats(0.05, 0.95), st.integers(0, 10**6))
def test_max_clique_matches_networkx(n, p, seed):
    edges = _random_graph(n, p, seed)
    adj = _adj(n, edges)
    G = nx.Graph()
    G.add_nodes_from(range(n))
    G.add_edges_from(edges)
    want = max(len(c) for c in nx.find_cliques(G))
    clique, exact = max_clique(adj)
    assert exact and len(clique) == want and _is_clique(adj, clique)


@given(st.integers(1, 30), st.integers(0, 10**6))
def test_greedy_is_a_clique(n, seed):
    adj = _adj(n, _random_graph(n, 0.5, seed))
    assert _is_clique(adj, greedy_clique(adj))


def test_degeneracy_order_is_permutation():
    adj = _adj(6, [(0, 1), (1, 2), (2, 0), (3, 4)])
    assert sorted(degeneracy_order(adj)) == list(range(6))


def test_large_graph_falls_back_to_greedy():
    adj = _adj(250, _random_graph(250, 0.1, 1))
    clique, exact = max_clique(adj, exact_limit=200)
    assert not exact and _is_clique(adj, clique)


def test_empty_graph():
    assert max_clique([]) == ([], True)
    assert len(max_clique([0, 0, 0])[0]) == 1
