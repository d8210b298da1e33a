"""Matchings, 2-matchings, and the fractional vertex-cover LP.

A 2-matching assigns weights {0, 1/2, 1} to edges with incidence sums at
most 1 per vertex; a 2-cover assigns {0, 1/2, 1} to vertices covering
every edge to total at least 1.  Both optima are half-integral and both
reduce to integral matching on the bipartite double cover: the maximum
2-matching value is half the double cover's maximum matching size, and by
LP duality the minimum fractional cover has the same value, with a
witness read off a Koenig vertex cover of the double cover.

A perfect 2-matching (value n/2, every vertex saturated) exists iff the
double cover has a perfect matching, iff every system of vertex-disjoint
odd cycles and edges can cover V; when it does not exist there is a
stable set X with fewer neighbors than members, and that set is returned
as the witness.

Maximum matching on general graphs uses augmenting paths with blossom
contraction.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .errors import GraphError, IsolatedVertexError
from .graph import Graph, components, delete, is_stable, neighborhood

_HALF_VALUES = (0.0, 0.5, 1.0)


@dataclass(frozen=True)
class HalfIntegralVector:
    """Weights in {0, 1/2, 1} attached to edges or vertices of a graph.

    For carrier "edges", weights align with Graph.edges order; for
    carrier "vertices", index v is vertex v.
    """

    carrier: str
    weights: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.carrier not in ("edges", "vertices"):
            raise GraphError(f"carrier must be 'edges' or 'vertices', got {self.carrier!r}")
        for w in self.weights:
            if w not in _HALF_VALUES:
                raise GraphError(f"weight {w!r} not in {{0, 1/2, 1}}")

    def value(self) -> float:
        return sum(self.weights)

    def is_two_matching(self, G: Graph) -> bool:
        if self.carrier != "edges" or len(self.weights) != G.m:
            return False
        load = [0.0] * G.n
        for (u, v), w in zip(G.edges, self.weights):
            load[u] += w
            load[v] += w
        return all(x <= 1.0 for x in load)

    def is_two_cover(self, G: Graph) -> bool:
        if self.carrier != "vertices" or len(self.weights) != G.n:
            return False
        return all(self.weights[u] + self.weights[v] >= 1.0 for u, v in G.edges)


@dataclass(frozen=True)
class TwoMatchingCertificate:
    """A system of vertex-disjoint odd cycles (edge weight 1/2) and
    single edges (weight 1); covered says whether it touches every
    vertex."""

    cycles: tuple[tuple[int, ...], ...]
    matched_edges: tuple[tuple[int, int], ...]
    covered: bool

    def validate(self, G: Graph) -> bool:
        seen: set[int] = set()
        for cyc in self.cycles:
            if len(cyc) < 3 or len(cyc) % 2 == 0:
                return False
            if any(v in seen for v in cyc):
                return False
            seen.update(cyc)
            for i, u in enumerate(cyc):
                v = cyc[(i + 1) % len(cyc)]
                if not G.has_edge(u, v):
                    return False
        for u, v in self.matched_edges:
            if u in seen or v in seen or u == v:
                return False
            seen.add(u)
            seen.add(v)
            if not G.has_edge(u, v):
                return False
        return self.covered == (len(seen) == G.n)


def bipartite_double_cover(G: Graph) -> Graph:
    """Vertices u' = u and u'' = n + u; each edge {u,v} of G becomes
    {u', v''} and {v', u''}."""
    n = G.n
    edges = []
    for u, v in G.edges:
        edges.append((u, n + v))
        edges.append((v, n + u))
    return Graph(2 * n, edges)


def max_matching(G: Graph) -> tuple[int, tuple[tuple[int, int], ...]]:
    """Maximum matching size and edges, via blossom contraction."""
    n = G.n
    adj = G.adj
    match = [-1] * n
    for u, v in G.edges:
        if match[u] == -1 and match[v] == -1:
            match[u] = v
            match[v] = u
    for root in range(n):
        if match[root] == -1:
            _augment_from(n, adj, match, root)
    edges = tuple((v, match[v]) for v in range(n) if v < match[v])
    return len(edges), edges


def _augment_from(n, adj, match, root) -> bool:
    p = [-1] * n
    base = list(range(n))
    used = [False] * n
    used[root] = True
    q = deque([root])

    def lca(a: int, b: int) -> int:
        hit = [False] * n
        while True:
            a = base[a]
            hit[a] = True
            if match[a] == -1:
                break
            a = p[match[a]]
        while True:
            b = base[b]
            if hit[b]:
                return b
            b = p[match[b]]

    def mark_path(v: int, b: int, child: int) -> None:
        while base[v] != b:
            blossom[base[v]] = True
            blossom[base[match[v]]] = True
            p[v] = child
            child = match[v]
            v = p[match[v]]

    while q:
        v = q.popleft()
        for to in adj[v]:
            if base[v] == base[to] or match[v] == to:
                continue
            if to == root or (match[to] != -1 and p[match[to]] != -1):
                # Odd cycle: contract the blossom at the common base.
                curbase = lca(v, to)
                blossom = [False] * n
                mark_path(v, curbase, to)
                mark_path(to, curbase, v)
                for i in range(n):
                    if blossom[base[i]]:
                        base[i] = curbase
                        if not used[i]:
                            used[i] = True
                            q.append(i)
            elif p[to] == -1:
                p[to] = v
                if match[to] == -1:
                    while to != -1:
                        prev = p[to]
                        nxt = match[prev]
                        match[prev] = to
                        match[to] = prev
                        to = nxt
                    return True
                used[match[to]] = True
                q.append(match[to])
    return False


def _hopcroft_karp(n_left: int, n_right: int, adj) -> tuple[int, list[int], list[int]]:
    """Maximum bipartite matching; adj[u] lists right neighbors of left u."""
    INF = n_left + n_right + 1
    match_l = [-1] * n_left
    match_r = [-1] * n_right
    dist = [0] * n_left

    def bfs() -> bool:
        q = deque()
        for u in range(n_left):
            if match_l[u] == -1:
                dist[u] = 0
                q.append(u)
            else:
                dist[u] = INF
        found = False
        while q:
            u = q.popleft()
            for w in adj[u]:
                u2 = match_r[w]
                if u2 == -1:
                    found = True
                elif dist[u2] == INF:
                    dist[u2] = dist[u] + 1
                    q.append(u2)
        return found

    def dfs(u: int) -> bool:
        for w in adj[u]:
            u2 = match_r[w]
            if u2 == -1 or (dist[u2] == dist[u] + 1 and dfs(u2)):
                match_l[u] = w
                match_r[w] = u
                return True
        dist[u] = INF
        return False

    size = 0
    while bfs():
        for u in range(n_left):
            if match_l[u] == -1 and dfs(u):
                size += 1
    return size, match_l, match_r


def _double_cover_matching(G: Graph) -> tuple[int, list[int], list[int]]:
    """Hopcroft-Karp on the double cover; left u are original ids, right
    w are original ids of the second copy.  adj[u] = sorted neighbors."""
    return _hopcroft_karp(G.n, G.n, G.adj)


def max_2matching(G: Graph) -> tuple[float, HalfIntegralVector]:
    """Maximum 2-matching: value is half the double cover's matching
    size; the witness overlays the two copies (edge matched in both
    directions -> weight 1, in one -> 1/2)."""
    size, match_l, _ = _double_cover_matching(G)
    weights = []
    for u, v in G.edges:
        w = 0.0
        if match_l[u] == v:
            w += 0.5
        if match_l[v] == u:
            w += 0.5
        weights.append(w)
    vec = HalfIntegralVector("edges", tuple(weights))
    return size / 2.0, vec


def has_perfect_2matching(G: Graph):
    """(True, TwoMatchingCertificate) when the double cover has a perfect
    matching; otherwise (False, X) for a stable set X with |ΓX| < |X|.

    The violating set comes from the Hall violator on the unmatched side
    (alternating-reachable left vertices A, take X = A minus Γ(A)); an
    exhaustive stable-set search backs it up for n <= 20.
    """
    if G.n == 0:
        return True, TwoMatchingCertificate((), (), True)
    if G.isolated_vertices():
        raise IsolatedVertexError(
            f"isolated vertices {G.isolated_vertices()} cannot be 2-matched"
        )
    size, match_l, match_r = _double_cover_matching(G)
    if size == G.n:
        return True, _certificate_from_permutation(G, match_l)
    X = _stable_violator(G, match_l, match_r)
    if X is None and G.n <= 20:
        X = _stable_violator_exhaustive(G)
    if X is None:
        raise AssertionError("imperfect double-cover matching without a stable violator")
    return False, X


def _certificate_from_permutation(G: Graph, match_l) -> TwoMatchingCertificate:
    """match_l is a permutation (u matched to match_l[u]''); its 2-cycles
    give weight-1 edges, longer cycles are graph cycles: odd ones enter
    the certificate whole, even ones contribute alternate edges."""
    n = G.n
    seen = [False] * n
    cycles = []
    matched = []
    for s in range(n):
        if seen[s]:
            continue
        cyc = []
        x = s
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = match_l[x]
        if len(cyc) == 2:
            u, v = cyc
            matched.append((min(u, v), max(u, v)))
        elif len(cyc) % 2 == 1:
            cycles.append(tuple(cyc))
        else:
            for i in range(0, len(cyc), 2):
                u, v = cyc[i], cyc[i + 1]
                matched.append((min(u, v), max(u, v)))
    return TwoMatchingCertificate(tuple(cycles), tuple(sorted(matched)), True)


def _alternating_reachable(G: Graph, match_l, match_r) -> tuple[set, set]:
    """Left/right vertex sets reachable from free left vertices by
    alternating (non-matching left->right, matching right->left) paths."""
    z_left = set()
    z_right = set()
    q = deque()
    for u in range(G.n):
        if match_l[u] == -1:
            z_left.add(u)
            q.append(u)
    while q:
        u = q.popleft()
        for w in G.adj[u]:
            if w in z_right:
                continue
            z_right.add(w)
            u2 = match_r[w]
            if u2 != -1 and u2 not in z_left:
                z_left.add(u2)
                q.append(u2)
    return z_left, z_right


def _stable_violator(G: Graph, match_l, match_r):
    a_set, gamma_a = _alternating_reachable(G, match_l, match_r)
    X = tuple(sorted(a_set - set(neighborhood(G, a_set))))
    if not X:
        return None
    gx = neighborhood(G, X)
    if is_stable(G, X) and len(gx) < len(X):
        return X
    return None


def _stable_violator_exhaustive(G: Graph):
    for size in range(1, G.n + 1):
        for X in combinations(range(G.n), size):
            if is_stable(G, X) and len(neighborhood(G, X)) < len(X):
                return X
    return None


def min_fractional_cover(G: Graph) -> tuple[float, HalfIntegralVector]:
    """Minimum of sum(y) over y >= 0 with y_u + y_v >= 1 on every edge.

    By LP duality this equals the maximum 2-matching value, i.e. half the
    double cover's matching size; the half-integral witness is read off a
    Koenig vertex cover of the double cover.
    """
    size, match_l, match_r = _double_cover_matching(G)
    z_left, z_right = _alternating_reachable(G, match_l, match_r)
    # Koenig: (left \ reachable) + (right & reachable) is a minimum cover.
    y = [0.0] * G.n
    for v in range(G.n):
        if v not in z_left:
            y[v] += 0.5
        if v in z_right:
            y[v] += 0.5
    vec = HalfIntegralVector("vertices", tuple(y))
    return size / 2.0, vec


def _is_bipartite_subset(G: Graph, verts) -> bool:
    verts = set(verts)
    color = {}
    for s in verts:
        if s in color:
            continue
        color[s] = 0
        q = deque([s])
        while q:
            x = q.popleft()
            for w in G.adj[x]:
                if w not in verts:
                    continue
                if w not in color:
                    color[w] = color[x] ^ 1
                    q.append(w)
                elif color[w] == color[x]:
                    return False
    return True


def is_basic_2cover(G: Graph, y: HalfIntegralVector, convention: str = "half-set") -> bool:
    """Whether a valid 2-cover is basic (an extreme point of the cover LP).

    convention "half-set" (default): every connected component of the
    graph induced on the weight-1/2 vertices is non-bipartite (an empty
    half-set makes an integral cover, which is always basic).  convention
    "paper-literal": the graph induced on the weight-1 vertices is not
    bipartite.
    """
    if not y.is_two_cover(G):
        raise GraphError("not a valid 2-cover for this graph")
    if convention == "half-set":
        halves = [v for v in range(G.n) if y.weights[v] == 0.5]
        if not halves:
            return True
        sub = delete(G, [v for v in range(G.n) if v not in halves])
        H = sub.graph
        for comp in components(H):
            if _is_bipartite_subset(H, comp):
                return False
        return True
    if convention == "paper-literal":
        ones = [v for v in range(G.n) if y.weights[v] == 1.0]
        return not _is_bipartite_subset(G, ones) if ones else False
    raise GraphError(f"unknown convention {convention!r}")


def uniform_cover_status(G: Graph) -> tuple[bool, bool]:
    """(optimal, unique) for the all-1/2 cover: optimal iff G has a
    perfect 2-matching; additionally unique iff every single-vertex
    deletion also leaves a perfect 2-matching."""
    if G.isolated_vertices():
        raise IsolatedVertexError("uniform cover status needs a graph without isolated vertices")
    optimal = _p2m_flag(G)
    if not optimal:
        return False, False
    for v in range(G.n):
        H = delete(G, [v]).graph
        if not _p2m_flag(H):
            return True, False
    return True, True


def _p2m_flag(G: Graph) -> bool:
    """Perfect-2-matching test that treats isolated vertices as failure
    instead of raising."""
    if G.n == 0:
        return True
    if G.isolated_vertices():
        return False
    size, _, _ = _double_cover_matching(G)
    return size == G.n
