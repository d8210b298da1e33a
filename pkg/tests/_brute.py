"""Shared helpers for the tests: small graph builders and brute-force oracles.

The oracles are deliberately independent of the library paths they check.
A maximum matching is found by memoized recursion on the set of remaining
vertices; a minimum fractional vertex cover is found by exhaustive search
over weights in {0, 1/2, 1} per vertex (working in doubled integer weights
so every comparison is exact); a maximum 2-matching likewise over edge
weights.  Everything is exponential and only meant for n <= 12.
"""

from __future__ import annotations

from functools import lru_cache

from conjcap import Graph


def path(n: int) -> Graph:
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def complete(n: int) -> Graph:
    return Graph(n, tuple((i, j) for i in range(n) for j in range(i + 1, n)))


def star(leaves: int) -> Graph:
    return Graph(leaves + 1, tuple((0, i) for i in range(1, leaves + 1)))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, tuple((i, a + j) for i in range(a) for j in range(b)))


def disjoint_union(G: Graph, H: Graph) -> Graph:
    shifted = tuple((u + G.n, v + G.n) for u, v in H.edges)
    return Graph(G.n + H.n, tuple(G.edges) + shifted)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, 5 + i) for i in range(5)]
    return Graph(10, tuple(outer + inner + spokes))


def chair() -> Graph:
    """Star K_{1,3} with one edge subdivided hanging off vertex 3."""
    return Graph(5, ((0, 1), (0, 2), (0, 3), (3, 4)))


def brute_max_matching(G: Graph) -> int:
    """Maximum number of disjoint edges, by recursion on remaining vertices."""
    adj = G.adj

    @lru_cache(maxsize=None)
    def best(remaining: frozenset) -> int:
        pick = -1
        for u in sorted(remaining):
            if any(w in remaining for w in adj[u]):
                pick = u
                break
        if pick < 0:
            return 0
        out = best(remaining - {pick})
        for v in sorted(adj[pick]):
            if v in remaining:
                out = max(out, 1 + best(remaining - {pick, v}))
        return out

    return best(frozenset(range(G.n)))


def brute_fractional_cover(G: Graph) -> float:
    """Minimum total weight of a half-integral vertex cover, exhaustively.

    Weights are doubled to integers in {0, 1, 2}; an edge needs its endpoint
    weights to sum to at least 2.  Vertices are assigned in index order and a
    partial assignment is cut off once it cannot beat the incumbent, or once
    an already-assigned neighbour forces a weight above 2.
    """
    n = G.n
    nbrs = [sorted(w for w in G.adj[v] if w < v) for v in range(n)]
    best = 2 * n

    def assign(v: int, total: int, weights: list[int]) -> None:
        nonlocal best
        if total >= best:
            return
        if v == n:
            best = total
            return
        need = 0
        for w in nbrs[v]:
            need = max(need, 2 - weights[w])
        for doubled in (need, need + 1, 2):
            if doubled > 2:
                break
            weights[v] = doubled
            assign(v + 1, total + doubled, weights)
        weights[v] = 0

    assign(0, 0, [0] * n)
    return best / 2.0


def brute_max_2matching(G: Graph) -> float:
    """Maximum total weight over edge weights in {0, 1/2, 1}, exhaustively.

    Doubled weights: per-vertex incident sums must stay at most 2.  Only
    meant for a handful of edges.
    """
    edges = list(G.edges)
    m = len(edges)
    best = 0

    def assign(j: int, total: int, load: list[int]) -> None:
        nonlocal best
        if j == m:
            best = max(best, total)
            return
        u, v = edges[j]
        room = min(2 - load[u], 2 - load[v])
        for doubled in range(0, room + 1):
            load[u] += doubled
            load[v] += doubled
            assign(j + 1, total + doubled, load)
            load[u] -= doubled
            load[v] -= doubled

    assign(0, 0, [0] * G.n)
    return best / 2.0


def is_single_cycle(G: Graph) -> bool:
    """True iff G is one connected cycle through all its vertices."""
    if G.m != G.n or any(G.degree(v) != 2 for v in range(G.n)):
        return False
    seen = {0}
    frontier = [0]
    while frontier:
        v = frontier.pop()
        for w in G.adj[v]:
            if w not in seen:
                seen.add(w)
                frontier.append(w)
    return len(seen) == G.n
