"""Simple undirected graphs and the handful of structural operations the
rest of the package is built on: neighborhoods, vertex deletion with a
relabeling map, connected components restricted to an edge subset,
stability tests, and the conjunctive (AND) power construction.

Graphs are immutable: vertices are 0..n-1, edges are stored as a sorted
tuple of sorted pairs, and adjacency lists are sorted tuples.  Self-loops
and duplicate edges are construction errors everywhere, including the two
text formats (edge list and DIMACS) accepted by parse_graph.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import GraphFormatError, GraphError

MAX_POWER_VERTICES = 1_000_000


class Graph:
    """Immutable simple undirected graph on vertices 0..n-1."""

    __slots__ = ("n", "edges", "adj")

    def __init__(self, n: int, edges) -> None:
        if not isinstance(n, int) or n < 0:
            raise GraphError(f"vertex count must be a non-negative integer, got {n!r}")
        seen = set()
        norm = []
        for e in edges:
            try:
                u, v = e
            except (TypeError, ValueError):
                raise GraphError(f"edge {e!r} is not a pair")
            if not (isinstance(u, int) and isinstance(v, int)):
                raise GraphError(f"edge {e!r} has non-integer endpoints")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {e!r} has endpoints outside 0..{n - 1}")
            if u == v:
                raise GraphFormatError(f"self-loop at vertex {u}")
            if u > v:
                u, v = v, u
            if (u, v) in seen:
                raise GraphFormatError(f"duplicate edge {{{u}, {v}}}")
            seen.add((u, v))
            norm.append((u, v))
        norm.sort()
        self.n = n
        self.edges = tuple(norm)
        nbr: list[list[int]] = [[] for _ in range(n)]
        for u, v in norm:
            nbr[u].append(v)
            nbr[v].append(u)
        self.adj = tuple(tuple(sorted(a)) for a in nbr)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def isolated_vertices(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.n) if not self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self._edge_set()

    def _edge_set(self) -> frozenset:
        # Cheap enough to rebuild; graphs here are small.
        return frozenset(self.edges)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class InducedSubgraph:
    """Result of deleting vertices: the induced graph plus the relabeling.

    old_ids[new] gives the original id of new vertex `new`; new_id_of maps
    surviving original ids back.
    """

    graph: Graph
    old_ids: tuple[int, ...]

    @property
    def new_id_of(self) -> dict[int, int]:
        return {old: new for new, old in enumerate(self.old_ids)}


def parse_graph(text: str) -> Graph:
    """Parse either of the two accepted text formats.

    Edge-list format: one edge per line "u v" (whitespace-separated
    non-negative integers), '#' starts a comment, blank lines ignored;
    the vertex count is max id + 1.  DIMACS format: "c" comment lines,
    one "p edge n m" line, then "e u v" lines (1-based, converted to
    0-based).  Self-loops and duplicate edges are hard errors in both.
    """
    lines = []
    for raw in text.splitlines():
        ln = raw.split("#", 1)[0].strip()
        if ln:
            lines.append(ln)
    if not lines:
        raise GraphFormatError("empty graph text")
    if all(ln[0].isdigit() for ln in lines):
        return _parse_edge_list(lines)
    return _parse_dimacs(lines)


def _parse_edge_list(lines: list[str]) -> Graph:
    edges = []
    for ln in lines:
        parts = ln.split()
        if len(parts) != 2:
            raise GraphFormatError(f"edge line must be 'u v', got {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"edge line must be 'u v', got {ln!r}")
        if u < 0 or v < 0:
            raise GraphFormatError(f"negative vertex id in {ln!r}")
        edges.append((u, v))
    n = 1 + max(max(u, v) for u, v in edges)
    try:
        return Graph(n, edges)
    except GraphFormatError:
        raise
    except GraphError as exc:
        raise GraphFormatError(str(exc))


def _parse_dimacs(lines: list[str]) -> Graph:
    n = m = None
    edges = []
    for ln in lines:
        tag = ln.split(None, 1)[0]
        if tag == "c":
            continue
        if tag == "p":
            if n is not None:
                raise GraphFormatError("multiple 'p' lines")
            parts = ln.split()
            if len(parts) != 4 or parts[1] != "edge":
                raise GraphFormatError(f"problem line must be 'p edge n m', got {ln!r}")
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise GraphFormatError(f"problem line must be 'p edge n m', got {ln!r}")
        elif tag == "e":
            if n is None:
                raise GraphFormatError("edge line before 'p' line")
            parts = ln.split()
            if len(parts) != 3:
                raise GraphFormatError(f"edge line must be 'e u v', got {ln!r}")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphFormatError(f"edge line must be 'e u v', got {ln!r}")
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphFormatError(f"edge {ln!r} outside 1..{n}")
            edges.append((u - 1, v - 1))
        else:
            raise GraphFormatError(f"unrecognized line {ln!r}")
    if n is None:
        raise GraphFormatError("missing 'p edge n m' line")
    if len(edges) != m:
        raise GraphFormatError(f"expected {m} edges, found {len(edges)}")
    try:
        return Graph(n, edges)
    except GraphFormatError:
        raise
    except GraphError as exc:
        raise GraphFormatError(str(exc))


def neighborhood(G: Graph, X) -> tuple[int, ...]:
    """Vertices outside X adjacent to at least one vertex of X."""
    X = _vertex_set(G, X)
    out = set()
    for v in X:
        out.update(G.adj[v])
    return tuple(sorted(out - X))


def is_stable(G: Graph, X) -> bool:
    """True when no edge of G joins two vertices of X."""
    X = _vertex_set(G, X)
    return all(not (u in X and v in X) for u, v in G.edges)


def is_maximal_stable(G: Graph, X) -> bool:
    X = _vertex_set(G, X)
    if not is_stable(G, X):
        return False
    for v in range(G.n):
        if v in X:
            continue
        if not any(w in X for w in G.adj[v]):
            return False
    return True


def delete(G: Graph, S) -> InducedSubgraph:
    """Induced subgraph on V(G) minus S, with the relabeling map retained."""
    S = _vertex_set(G, S)
    old_ids = tuple(v for v in range(G.n) if v not in S)
    new_of = {old: new for new, old in enumerate(old_ids)}
    edges = [
        (new_of[u], new_of[v]) for u, v in G.edges if u not in S and v not in S
    ]
    return InducedSubgraph(Graph(len(old_ids), edges), old_ids)


def components(G: Graph, edge_subset=None) -> tuple[tuple[int, ...], ...]:
    """Connected components of (V(G), edge_subset), default all edges.

    Every vertex of G appears in exactly one component; vertices touched
    by no selected edge form singletons.  Components are sorted by their
    smallest vertex, vertices sorted within each.
    """
    if edge_subset is None:
        use = G.edges
    else:
        use = tuple(_normalize_edge(G, e) for e in edge_subset)
    nbr: list[list[int]] = [[] for _ in range(G.n)]
    for u, v in use:
        nbr[u].append(v)
        nbr[v].append(u)
    seen = [False] * G.n
    comps = []
    for s in range(G.n):
        if seen[s]:
            continue
        stack = [s]
        seen[s] = True
        comp = []
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in nbr[x]:
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)
        comps.append(tuple(sorted(comp)))
    return tuple(comps)


def power(G: Graph, t: int, max_vertices: int = MAX_POWER_VERTICES) -> Graph:
    """Conjunctive t-th power: vertices are the t-tuples over V(G), and
    two tuples are adjacent iff for every edge {a,b} of G some coordinate
    i has {x_i, y_i} = {a, b}.  Tuple (v_1..v_t) maps to the integer
    sum of v_i * n^(t-i), so tuples enumerate in lexicographic order.
    """
    if not isinstance(t, int) or t < 1:
        raise GraphError(f"power exponent must be a positive integer, got {t!r}")
    if G.n == 0:
        raise GraphError("power of the empty graph is undefined")
    if G.n**t > max_vertices:
        raise GraphError(
            f"power graph would have {G.n ** t} vertices, above the cap {max_vertices}"
        )
    n, t_ = G.n, t
    nv = n**t_
    tuples = []
    cur = [0] * t_
    while True:
        tuples.append(tuple(cur))
        i = t_ - 1
        while i >= 0 and cur[i] == n - 1:
            cur[i] = 0
            i -= 1
        if i < 0:
            break
        cur[i] += 1
    need = G.edges
    edges = []
    # No tuple pair can realize more distinct edges than it has coordinates.
    if len(need) <= t_:
        for xi in range(nv):
            x = tuples[xi]
            for yi in range(xi + 1, nv):
                y = tuples[yi]
                ok = True
                for a, b in need:
                    hit = False
                    for i in range(t_):
                        u, v = x[i], y[i]
                        if (u == a and v == b) or (u == b and v == a):
                            hit = True
                            break
                    if not hit:
                        ok = False
                        break
                if ok:
                    edges.append((xi, yi))
    return Graph(nv, edges)


def _vertex_set(G: Graph, X) -> frozenset:
    X = frozenset(X)
    for v in X:
        if not isinstance(v, int) or not 0 <= v < G.n:
            raise GraphError(f"vertex {v!r} outside 0..{G.n - 1}")
    return X


def _normalize_edge(G: Graph, e):
    u, v = e
    if u > v:
        u, v = v, u
    if (u, v) not in G._edge_set():
        raise GraphError(f"edge {e!r} is not an edge of the graph")
    return (u, v)
