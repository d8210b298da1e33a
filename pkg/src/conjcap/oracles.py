"""Brute-force ground truth for small instances.

Everything here trades speed for independence: no result is derived from
the fast-path code it is meant to check.  The stability number comes
from vertex-inclusion branch and bound, the cover number from its own
edge-branching search (not n - alpha), the clique number from coloring-
bounded expansion, theta from random simplex starts refined by pairwise
mass transfers, and the perfect-2-matching predicate from exhausting the
stable-set expansion condition |Gamma X| >= |X|.

Each oracle refuses inputs above its size guard rather than truncating.
"""

from __future__ import annotations

import random
from pathlib import Path

from ._backend import hbar_raw
from .errors import GraphError, SizeGuardError
from .graph import Graph

ALPHA_GUARD = 24
OMEGA_GUARD = 1024
THETA_GUARD = 8
P2M_GUARD = 20


def _adjacency_masks(G: Graph) -> list[int]:
    adj = [0] * G.n
    for u, v in G.edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return adj


def alpha_bruteforce(G: Graph, guard: int = ALPHA_GUARD) -> tuple[int, tuple[int, ...]]:
    """Exact stability number with a witness maximum stable set.

    Branch and bound on the lowest candidate vertex: include it (dropping
    its neighbors) or exclude it, pruning when even taking every
    remaining candidate cannot beat the incumbent.  Include-first search
    with strict improvement makes the witness deterministic.
    """
    if G.n > guard:
        raise SizeGuardError(f"alpha oracle guard is {guard} vertices, got {G.n}")
    adj = _adjacency_masks(G)
    best_size = 0
    best_mask = 0

    def rec(cand: int, cur: int, size: int) -> None:
        nonlocal best_size, best_mask
        if cand == 0:
            if size > best_size:
                best_size = size
                best_mask = cur
            return
        if size + cand.bit_count() <= best_size:
            return
        v = (cand & -cand).bit_length() - 1
        rec(cand & ~adj[v] & ~(1 << v), cur | (1 << v), size + 1)
        rec(cand & ~(1 << v), cur, size)

    rec((1 << G.n) - 1, 0, 0)
    witness = tuple(v for v in range(G.n) if best_mask >> v & 1)
    return best_size, witness


def tau_bruteforce(G: Graph, guard: int = ALPHA_GUARD) -> int:
    """Exact minimum vertex cover size by edge branching.

    Picks an uncovered edge and branches on which endpoint covers it; a
    greedy matching among uncovered edges lower-bounds the vertices still
    needed.  Deliberately not computed as n - alpha so the Gallai
    identity stays a two-sided test.
    """
    if G.n > guard:
        raise SizeGuardError(f"cover oracle guard is {guard} vertices, got {G.n}")
    edges = G.edges
    best = G.n

    def matching_bound(cover: int) -> int:
        used = cover
        count = 0
        for u, v in edges:
            if used >> u & 1 or used >> v & 1:
                continue
            used |= (1 << u) | (1 << v)
            count += 1
        return count

    def rec(cover: int, size: int) -> None:
        nonlocal best
        if size + matching_bound(cover) >= best:
            return
        for u, v in edges:
            if not (cover >> u & 1 or cover >> v & 1):
                rec(cover | (1 << u), size + 1)
                rec(cover | (1 << v), size + 1)
                return
        best = size

    rec(0, 0)
    return best


def omega_bruteforce(G: Graph, guard: int = OMEGA_GUARD) -> int:
    """Exact clique number via coloring-bounded expansion.

    Candidates are greedily colored; a vertex whose color class index
    plus the current clique size cannot beat the incumbent cuts its
    whole branch.
    """
    if G.n > guard:
        raise SizeGuardError(f"clique oracle guard is {guard} vertices, got {G.n}")
    if G.n == 0:
        return 0
    adj = _adjacency_masks(G)
    best = 0

    def color_order(p_mask: int) -> tuple[list[int], list[int]]:
        ordered: list[int] = []
        bounds: list[int] = []
        q = p_mask
        color = 0
        while q:
            color += 1
            avail = q
            while avail:
                v = (avail & -avail).bit_length() - 1
                avail &= ~adj[v] & ~(1 << v)
                q &= ~(1 << v)
                ordered.append(v)
                bounds.append(color)
        return ordered, bounds

    def expand(size: int, p_mask: int) -> None:
        nonlocal best
        ordered, bounds = color_order(p_mask)
        for i in range(len(ordered) - 1, -1, -1):
            if size + bounds[i] <= best:
                return
            v = ordered[i]
            sub = p_mask & adj[v]
            if sub:
                expand(size + 1, sub)
            elif size + 1 > best:
                best = size + 1
            p_mask &= ~(1 << v)

    expand(0, (1 << G.n) - 1)
    return best


def theta_search(
    G: Graph,
    samples: int = 40,
    refine_iters: int = 200,
    seed: int = 0,
    guard: int = THETA_GUARD,
) -> float:
    """Lower bound on theta from direct search, independent of the solver.

    Starts at the uniform point and at `samples` random simplex points,
    then hill-climbs each by transferring mass between vertex pairs with
    a geometrically shrinking step.  The best minimum edge value found is
    returned; the true theta can only be larger.
    """
    if G.n > guard:
        raise SizeGuardError(f"theta oracle guard is {guard} vertices, got {G.n}")
    if not G.edges:
        raise GraphError("theta undefined without edges")
    rng = random.Random(seed)
    n = G.n
    edges = G.edges

    def l_of(p: list[float]) -> float:
        return min(hbar_raw(p[u], p[v]) for u, v in edges)

    def climb(p: list[float]) -> float:
        cur = l_of(p)
        step = 0.25
        for _ in range(refine_iters):
            moved = False
            for i in range(n):
                for j in range(n):
                    if i == j:
                        continue
                    d = step * p[i]
                    if p[i] - d <= 1e-12:
                        continue
                    p[i] -= d
                    p[j] += d
                    val = l_of(p)
                    if val > cur + 1e-15:
                        cur = val
                        moved = True
                    else:
                        p[i] += d
                        p[j] -= d
            if not moved:
                step *= 0.5
                if step < 1e-10:
                    break
        return cur

    best = climb([1.0 / n] * n)
    for _ in range(samples):
        raw = [rng.expovariate(1.0) for _ in range(n)]
        total = sum(raw)
        best = max(best, climb([x / total for x in raw]))
    return best


def perfect_2matching_oracle(G: Graph, guard: int = P2M_GUARD) -> bool:
    """Exhaustive stable-set expansion test: every nonempty stable set X
    must satisfy |Gamma X| >= |X|.  An isolated vertex fails on its own
    singleton."""
    if G.n > guard:
        raise SizeGuardError(f"2-matching oracle guard is {guard} vertices, got {G.n}")
    adj = _adjacency_masks(G)
    ok = True

    def rec(i: int, x_mask: int, size: int, gamma: int) -> None:
        nonlocal ok
        if not ok or i == G.n:
            return
        rec(i + 1, x_mask, size, gamma)
        if ok and not (adj[i] & x_mask):
            new_gamma = gamma | adj[i]
            if new_gamma.bit_count() < size + 1:
                ok = False
                return
            rec(i + 1, x_mask | (1 << i), size + 1, new_gamma)

    rec(0, 0, 0, 0)
    return ok


def random_graph_corpus(
    count: int,
    n_low: int,
    n_high: int,
    seed: int,
    densities: tuple[float, ...] = (0.2, 0.4, 0.6),
) -> list[tuple[str, Graph]]:
    """Reproducible G(n, p) instances without isolated vertices.

    Densities rotate round-robin so every p is evenly represented; draws
    with an isolated vertex (or no edges) are discarded and the stream
    continues, so the corpus is a pure function of its arguments.
    """
    rng = random.Random(seed)
    out: list[tuple[str, Graph]] = []
    while len(out) < count:
        n = rng.randint(n_low, n_high)
        p = densities[len(out) % len(densities)]
        edges = [
            (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p
        ]
        touched = {x for e in edges for x in e}
        if len(touched) < n:
            continue
        name = f"g{len(out):03d}_n{n}_p{int(round(p * 100)):02d}"
        out.append((name, Graph(n, edges)))
    return out


def write_corpus_snapshot(
    corpus: list[tuple[str, Graph]], directory: str, seed: int
) -> list[str]:
    """Write each corpus graph as an edge-list file, seed in the name."""
    base = Path(directory)
    base.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, G in corpus:
        path = base / f"{name}_seed{seed}.txt"
        lines = [f"# {name} seed={seed} n={G.n} m={len(G.edges)}"]
        lines += [f"{u} {v}" for u, v in G.edges]
        path.write_text("\n".join(lines) + "\n")
        paths.append(str(path))
    return paths
