"""Maximum clique search on bitset adjacency lists.

``adj[v]`` is an int whose bit ``u`` is set when ``u`` and ``v`` are
adjacent. The exact search is branch and bound with greedy colouring bounds
(Tomita-style); vertices are processed in degeneracy order.
"""

from __future__ import annotations

from typing import Sequence


def degeneracy_order(adj: Sequence[int]) -> list[int]:
    """Vertices in the order they are peeled off by repeated min-degree removal."""
    n = len(adj)
    alive = (1 << n) - 1
    deg = [a.bit_count() for a in adj]
    order = []
    for _ in range(n):
        v = min((u for u in range(n) if alive >> u & 1), key=lambda u: (deg[u], u))
        order.append(v)
        alive &= ~(1 << v)
        nb = adj[v] & alive
        while nb:
            low = nb & -nb
            deg[low.bit_length() - 1] -= 1
            nb ^= low
    return order


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def greedy_clique(adj: Sequence[int]) -> list[int]:
    """Best clique found by greedy extension from every vertex."""
    best: list[int] = []
    for v in reversed(degeneracy_order(adj)):
        clique = [v]
        cand = adj[v]
        while cand:
            u = max(_bits(cand), key=lambda x: ((adj[x] & cand).bit_count(), -x))
            clique.append(u)
            cand &= adj[u]
        if len(clique) > len(best):
            best = clique
    return sorted(best)


def _exact(adj: Sequence[int], lower: list[int]) -> list[int]:
    n = len(adj)
    # relabel so that low indices are the last-peeled (densest) vertices
    order = list(reversed(degeneracy_order(adj)))
    pos = {v: i for i, v in enumerate(order)}
    radj = [0] * n
    for v in range(n):
        m = 0
        for u in _bits(adj[v]):
            m |= 1 << pos[u]
        radj[pos[v]] = m
    best = [pos[v] for v in lower]

    def colour(P: int) -> list[tuple[int, int]]:
        out = []
        k = 0
        U = P
        while U:
            k += 1
            Q = U
            while Q:
                low = Q & -Q
                v = low.bit_length() - 1
                Q &= ~radj[v] & ~low
                U &= ~low
                out.append((v, k))
        return out

    def expand(R: list[int], P: int) -> None:
        nonlocal best
        for v, c in reversed(colour(P)):
            if len(R) + c <= len(best):
                return
            R.append(v)
            P2 = P & radj[v]
            if P2:
                expand(R, P2)
            elif len(R) > len(best):
                best = list(R)
            R.pop()
            P &= ~(1 << v)

    expand([], (1 << n) - 1)
    return sorted(order[v] for v in best)


def max_clique(adj: Sequence[int], exact_limit: int = 200) -> tuple[list[int], bool]:
    """Return ``(clique, is_maximum)``.

    Graphs with more than ``exact_limit`` vertices only get the greedy
    answer, which is still a clique and so still a valid lower bound.
    """
    if not adj:
        return [], True
    lower = greedy_clique(adj)
    if len(adj) > exact_limit:
        return lower, False
    return _exact(adj, lower), True
