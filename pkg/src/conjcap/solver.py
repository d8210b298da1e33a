"""Conjunctive capacity solver.

The capacity of G is the maximum over probability distributions P of the
minimum edge value hbar(P(x), P(y)); a maximizer is called balanced.  The
objective is concave on the simplex, so three cooperating strategies are
used:

  fast path     a graph with a perfect 2-matching has capacity exactly
                2/n at the uniform distribution, so that case is detected
                via the bipartite double cover and returned closed-form;
  candidates    for every maximal stable set S (small n), the two-valued
                distribution from the entropy kernel is built and then
                refined to a fixpoint: classify tight-edge components,
                re-solve the per-component level values exactly, repeat;
                a candidate is accepted when every structural certificate
                passes and no other candidate beats its value;
  ascent        projected supergradient ascent (step c/sqrt(k), uniform
                tie-breaking among minimum edges, simplex projection)
                polished through the same classify-and-equalize snap,
                used when certified candidates are not found directly.

Determinism: all enumeration orders are sorted, the ascent noise stream
is splitmix64 seeded from the seed argument, and the backends produce
bitwise-identical floats, so equal inputs give equal outputs.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass
from math import fsum, isfinite

from . import _backend
from .errors import CenteringError, DomainError, GraphError, IsolatedVertexError
from .graph import Graph, components, is_maximal_stable, is_stable
from .kernel import TwoValuedProblem, phi, t_star
from .matching import _p2m_flag
from .structure import (
    ComponentLevels,
    StructureReport,
    component_levels,
    expansion_violations,
    tight_critical_set,
    tight_edges,
    verify_balance_certificates,
)

DEFAULT_TOL = 1e-7
DEFAULT_MAX_ITER = 50_000
DEFAULT_RESTARTS = 4
POSITIVITY_FLOOR = 1e-12
ENUM_LIMIT = 18
MAX_STABLE_SETS = 4000
_CHUNK = 2000
_REFINE_ROUNDS = 6
_RESCUE_ROUNDS = 8
_CLIMB_ROUNDS = 150
_CLIMB_LIMIT = 32
_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class Distribution:
    """Strictly positive probabilities over the vertices, summing to 1."""

    probs: tuple[float, ...]

    def __post_init__(self) -> None:
        if not self.probs:
            raise DomainError("distribution needs at least one entry")
        for x in self.probs:
            if not (isinstance(x, float) and isfinite(x) and x > 0.0):
                raise DomainError(f"distribution entry {x!r} not a positive real")
        total = fsum(self.probs)
        if abs(total - 1.0) > 1e-12:
            raise DomainError(f"distribution sums to {total!r}, not 1")

    @classmethod
    def uniform(cls, n: int) -> "Distribution":
        if n <= 0:
            raise DomainError("need a positive vertex count")
        return cls((1.0 / n,) * n)

    def __len__(self) -> int:
        return len(self.probs)

    def __getitem__(self, i: int) -> float:
        return self.probs[i]


@dataclass(frozen=True)
class BalancedSolution:
    """Solver output: the distribution, its value theta (the recomputed
    minimum edge value), tight edges and per-component levels at the
    classification tolerance, the centering stable set used for the
    certificate run, and the convergence verdict."""

    dist: Distribution
    theta: float
    tight_edges: tuple[tuple[int, int], ...]
    component_levels: tuple[ComponentLevels, ...]
    iterations: int
    converged: bool
    stable_set: tuple[int, ...]
    report: StructureReport | None
    backend: str = _backend.BACKEND


def _edge_arrays(G: Graph) -> tuple[array, array]:
    eu = array("i", [u for u, _ in G.edges])
    ev = array("i", [v for _, v in G.edges])
    return eu, ev


def l_value(G: Graph, P) -> float:
    """Minimum over edges of hbar(P(x), P(y))."""
    if not G.edges:
        raise GraphError("graph has no edges")
    probs = tuple(getattr(P, "probs", P))
    if len(probs) != G.n:
        raise GraphError(f"distribution has {len(probs)} entries for {G.n} vertices")
    eu, ev = _edge_arrays(G)
    return _backend.min_edge_value(array("d", probs), eu, ev)


def _l_raw(probs, eu, ev) -> float:
    return _backend.min_edge_value(array("d", probs), eu, ev)


def _normalized(values) -> tuple[float, ...]:
    # fsum keeps the exactly-rounded total so the result passes the
    # sum-to-1 validation without nudging any entry.
    total = fsum(values)
    return tuple(x / total for x in values)


def _two_valued_probs(G: Graph, S) -> tuple[float, ...]:
    """Kernel closed form for the stable-side/rest split of S."""
    S = frozenset(S)
    alpha = len(S)
    tau = G.n - alpha
    if tau == 0:
        return _normalized([1.0] * G.n)
    t = t_star(alpha, tau)
    q = 1.0 / (t * tau + alpha)
    p = t * q
    return _normalized([q if v in S else p for v in range(G.n)])


def _maximal_stable_sets(G: Graph, cap: int = MAX_STABLE_SETS):
    """All maximal stable sets of G (maximal cliques of the complement),
    Bron-Kerbosch with pivoting, deterministic order, capped."""
    n = G.n
    comp_adj = []
    for v in range(n):
        nb = set(range(n)) - set(G.adj[v]) - {v}
        comp_adj.append(nb)
    out: list[tuple[int, ...]] = []

    def bk(r: set, p: set, x: set) -> bool:
        if len(out) >= cap:
            return False
        if not p and not x:
            out.append(tuple(sorted(r)))
            return True
        pivot_pool = p | x
        pivot = max(sorted(pivot_pool), key=lambda u: len(comp_adj[u] & p))
        for v in sorted(p - comp_adj[pivot]):
            if not bk(r | {v}, p & comp_adj[v], x & comp_adj[v]):
                return False
            p = p - {v}
            x = x | {v}
        return True

    bk(set(), set(range(n)), set())
    return sorted(out, key=lambda s: (-len(s), s))


def _grow_stable(G: Graph, seed_set, probs) -> tuple[int, ...]:
    """Extend a stable set to a maximal one, preferring light vertices."""
    S = set(seed_set)
    order = sorted(range(G.n), key=lambda v: (probs[v], v))
    for v in order:
        if v in S:
            continue
        if not any(w in S for w in G.adj[v]):
            S.add(v)
    return tuple(sorted(S))


def _augmented_tight(G: Graph, probs, tol: float) -> tuple[tuple[int, int], ...]:
    """Tight edges at tol, plus each uncovered vertex's minimum incident
    edge, so the result is always a line cover."""
    tight = list(tight_edges(G, probs, tol))
    covered = set()
    for u, v in tight:
        covered.add(u)
        covered.add(v)
    for x in range(G.n):
        if x in covered:
            continue
        best = min(G.adj[x], key=lambda y: _backend.hbar_raw(probs[x], probs[y]))
        e = (x, best) if x < best else (best, x)
        if e not in tight:
            tight.append(e)
        covered.add(x)
        covered.add(best)
    return tuple(sorted(tight))


def _equalize(G: Graph, S, comps) -> tuple[float, ...] | None:
    """Exact level solve: per component the kernel gives the best ratio
    and per-unit-mass value; masses are then split so all components
    share one objective value."""
    S = frozenset(S)
    plan = []
    for comp in comps:
        alpha = sum(1 for v in comp if v in S)
        tau = len(comp) - alpha
        if tau == 0:
            t = 1.0
            c = 2.0 / alpha
        elif alpha == 0:
            t = 1.0
            c = 2.0 / tau
        else:
            t = t_star(alpha, tau)
            c = phi(TwoValuedProblem(1.0, alpha, tau)).value
        plan.append((comp, alpha, tau, t, c))
    inv = sum(1.0 / c for _, _, _, _, c in plan)
    theta = 1.0 / inv
    probs = [0.0] * G.n
    for comp, alpha, tau, t, c in plan:
        w = theta / c
        q = w / (t * tau + alpha)
        p = t * q
        for v in comp:
            probs[v] = q if v in S else p
    if any(x <= 0.0 for x in probs):
        return None
    return _normalized(probs)


def _refine_chain(G: Graph, S, probs0, class_tol: float):
    """Fixpoint iteration: classify tight components, re-solve levels,
    repeat.  Yields each distinct iterate (including the seed)."""
    probs = probs0
    yield probs
    for _ in range(_REFINE_ROUNDS):
        tight = _augmented_tight(G, probs, class_tol)
        comps = components(G, edge_subset=tight)
        new = _equalize(G, S, comps)
        if new is None:
            return
        delta = max(abs(a - b) for a, b in zip(new, probs))
        probs = new
        yield probs
        if delta <= class_tol * 1e-3:
            return


def _pool_key(probs) -> tuple[float, ...]:
    return tuple(round(x, 12) for x in probs)


class _Pool:
    """Candidate pool: keeps the best point seen, deduplicates, and
    remembers candidates whose certificates already failed."""

    def __init__(self, eu: array, ev: array) -> None:
        self.eu = eu
        self.ev = ev
        self.seen: set = set()
        self.failed: set = set()
        self.entries: list[tuple[float, tuple[float, ...], tuple[int, ...]]] = []
        self.best_l = float("-inf")

    def add(self, probs, S) -> bool:
        key = _pool_key(probs)
        if key in self.seen:
            return False
        self.seen.add(key)
        val = _l_raw(probs, self.eu, self.ev)
        self.entries.append((val, tuple(probs), tuple(sorted(S))))
        if val > self.best_l:
            self.best_l = val
        return True

    def ranked(self):
        return sorted(self.entries, key=lambda e: (-e[0], e[1]))


def _candidate_centerings(G, probs, stored_S, class_tol):
    """Stable sets to try centering the certificates on: the candidate's
    own tight-critical set grown maximal (the optimum's critical set need
    not sit inside the stable set that seeded the candidate), then the
    seed set itself when different."""
    out = []
    m = tight_critical_set(G, probs, class_tol)
    if is_stable(G, m):
        out.append(_grow_stable(G, m, probs))
    stored = tuple(sorted(stored_S))
    if stored not in out:
        out.append(stored)
    return out


def _certify_report(G, probs, S, class_tol, seed):
    try:
        report = verify_balance_certificates(G, probs, S, tol=class_tol, seed=seed)
    except CenteringError:
        return None
    if report.all_passed():
        return report
    return None


def solve_balanced(
    G: Graph,
    tol: float = DEFAULT_TOL,
    seed: int = 0,
    max_iter: int = DEFAULT_MAX_ITER,
    restarts: int = DEFAULT_RESTARTS,
) -> BalancedSolution:
    """Maximize the minimum edge value over the simplex.

    Returns a BalancedSolution whose theta is the recomputed minimum edge
    value of the returned distribution; converged means the structural
    certificates passed on it (the perfect-2-matching fast path is exact
    and always converged).  On non-convergence the best point found is
    returned with converged False.
    """
    if G.isolated_vertices():
        raise IsolatedVertexError(
            f"isolated vertices {G.isolated_vertices()} have no edge values"
        )
    if not G.edges:
        raise GraphError("graph has no edges")
    class_tol = max(tol * 10.0, 1e-12)
    eu, ev = _edge_arrays(G)

    if _p2m_flag(G):
        dist = Distribution.uniform(G.n)
        S = _grow_stable(G, (), dist.probs)
        report = None
        try:
            report = verify_balance_certificates(G, dist.probs, S, tol=class_tol, seed=seed)
        except CenteringError:
            pass
        return BalancedSolution(
            dist=dist,
            theta=2.0 / G.n,
            tight_edges=tight_edges(G, dist.probs, class_tol),
            component_levels=tuple(component_levels(G, dist.probs, S, class_tol)),
            iterations=0,
            converged=True,
            stable_set=S,
            report=report,
        )

    pool = _Pool(eu, ev)
    # No perfect 2-matching here (the fast path handled that), so by the
    # 2/n theorem no distribution at value <= 2/n can be balanced.
    val_floor = 2.0 / G.n + tol
    uniform = Distribution.uniform(G.n).probs
    pool.add(uniform, _grow_stable(G, (), uniform))

    if G.n <= ENUM_LIMIT:
        for S in _maximal_stable_sets(G):
            for probs in _refine_chain(G, S, _two_valued_probs(G, S), class_tol):
                pool.add(probs, S)
        hit = _first_certified(G, pool, tol, class_tol, seed, val_floor)
        if hit is None:
            hit = _rescue(G, pool, tol, class_tol, seed, val_floor)
        if hit is not None:
            return _assemble(G, *hit, iterations=0, converged=True, class_tol=class_tol)

    total_iters = 0
    c_step = 1.0 / G.n
    starts = _ascent_starts(G, pool, restarts, seed)
    for r, start in enumerate(starts):
        p = array("d", start)
        best_p = array("d", start)
        best_l_run = float("-inf")
        rng_state = ((seed & _MASK64) * 0x9E3779B97F4A7C15 + r + 1) & _MASK64
        k0 = 0
        while k0 < max_iter:
            iters = min(_CHUNK, max_iter - k0)
            best_l_run, rng_state = _backend.ascent_chunk(
                p, best_p, eu, ev, iters, c_step, k0, rng_state, best_l_run, POSITIVITY_FLOOR
            )
            k0 += iters
            total_iters += iters
            improved = _polish_into_pool(G, pool, tuple(best_p), class_tol)
            if improved:
                hit = _first_certified(G, pool, tol, class_tol, seed, val_floor)
                if hit is not None:
                    return _assemble(
                        G, *hit, iterations=total_iters, converged=True, class_tol=class_tol
                    )
        final = tuple(best_p)
        m_final = tight_critical_set(G, final, class_tol)
        if not is_stable(G, m_final):
            m_final = ()
        pool.add(final, _grow_stable(G, m_final, final))

    hit = _first_certified(G, pool, tol, class_tol, seed, val_floor)
    if hit is None:
        hit = _rescue(G, pool, tol, class_tol, seed, val_floor)
    if hit is not None:
        return _assemble(G, *hit, iterations=total_iters, converged=True, class_tol=class_tol)
    val, probs, S = pool.ranked()[0]
    return _assemble(G, probs, S, None, iterations=total_iters, converged=False, class_tol=class_tol)


def _ascent_starts(G: Graph, pool: _Pool, restarts: int, seed: int):
    """Restart points: best candidate so far, uniform, then seeded
    perturbations of uniform."""
    starts = []
    if pool.entries:
        starts.append(pool.ranked()[0][1])
    starts.append(Distribution.uniform(G.n).probs)
    state = (seed & _MASK64) ^ 0xD1B54A32D192ED03
    while len(starts) < restarts:
        vals = []
        for _ in range(G.n):
            state, z = _backend.splitmix64_next(state)
            vals.append(0.5 + (z >> 11) / float(1 << 53))
        starts.append(_normalized(vals))
    return starts[:restarts]


def _polish_into_pool(G: Graph, pool: _Pool, probs, class_tol: float) -> bool:
    """Snap an ascent iterate to the two-level structure; returns whether
    the pool gained a new entry."""
    m = tight_critical_set(G, probs, class_tol)
    if not is_stable(G, m):
        # Transient iterate with a tangled critical set: grow from scratch.
        m = ()
    S = _grow_stable(G, m, probs)
    added = pool.add(probs, S)
    for cand in _refine_chain(G, S, probs, class_tol):
        added = pool.add(cand, S) or added
    return added


def _first_certified(G: Graph, pool: _Pool, tol, class_tol, seed, val_floor: float):
    """Walk candidates best-first; a candidate wins when its certificates
    pass under some centering and nothing in the pool beats it by more
    than tol.  Certificate failures are cached: they do not depend on
    what else the pool holds.

    val_floor carries the 2/n exclusion: without a perfect 2-matching the
    optimum is strictly above 2/n, yet a flat distribution at exactly 2/n
    satisfies every structural check vacuously (single ratio-1 component),
    so such candidates are rejected outright."""
    for val, probs, S in pool.ranked():
        if val < pool.best_l - tol:
            break
        if val <= val_floor:
            continue
        key = _pool_key(probs)
        if key in pool.failed:
            continue
        for cand_S in _candidate_centerings(G, probs, S, class_tol):
            report = _certify_report(G, probs, cand_S, class_tol, seed)
            if report is not None:
                return probs, cand_S, report
        pool.failed.add(key)
    return None


def _pair_climb(G: Graph, probs, rounds: int = _CLIMB_ROUNDS):
    """Deterministic pairwise mass-transfer hill climb on the minimum
    edge value, with a geometrically shrinking step.  Returns the climbed
    point, or None when no move improved (already pairwise stable)."""
    eu, ev = _edge_arrays(G)
    p = list(probs)
    cur = _l_raw(p, eu, ev)
    start = cur
    step = 0.25
    for _ in range(rounds):
        moved = False
        for i in range(G.n):
            for j in range(G.n):
                if i == j:
                    continue
                d = step * p[i]
                if p[i] - d <= POSITIVITY_FLOOR:
                    continue
                p[i] -= d
                p[j] += d
                val = _l_raw(p, eu, ev)
                if val > cur + 1e-15:
                    cur = val
                    moved = True
                else:
                    p[i] += d
                    p[j] -= d
        if not moved:
            step *= 0.5
            if step < 1e-12:
                break
    if cur <= start:
        return None
    return tuple(p)


def _violation_splits(G: Graph, probs, S, class_tol: float, seed: int):
    """Exact candidates obtained by splitting a level component at an
    expansion violation.

    A violating subset U with stable-side neighborhood A = X(F) ∩ ΓU says
    the component cannot hold one common ratio: U ∪ A wants the steeper
    ratio t_star(|A|, |U|) while the remainder wants a flatter one.
    Splitting there and re-solving the levels exactly is the move the
    violation's own perturbation argument makes infinitesimally."""
    if not is_maximal_stable(G, S):
        return []
    try:
        levels = component_levels(G, probs, S, class_tol)
    except CenteringError:
        return []
    viols, _ = expansion_violations(G, S, levels, class_tol, seed=seed)
    if not viols:
        return []
    comps = [set(lv.vertices) for lv in levels]
    out = []
    Sset = frozenset(S)
    for ci, U, a, bound, ratio in viols:
        inner = comps[ci]
        u_set = set(U)
        a_side = {
            w for u in U for w in G.adj[u] if w in Sset and w in inner
        }
        first = u_set | a_side
        rest = inner - first
        if not rest:
            continue
        new_comps = [tuple(sorted(c)) for c in comps[:ci]]
        new_comps.append(tuple(sorted(first)))
        new_comps.append(tuple(sorted(rest)))
        new_comps.extend(tuple(sorted(c)) for c in comps[ci + 1 :])
        cand = _equalize(G, S, new_comps)
        if cand is not None:
            out.append(cand)
    return out


def _rescue(G: Graph, pool: _Pool, tol, class_tol, seed, val_floor: float):
    """Intensification pass for points the plain certificates reject:
    climb the best pool entry pairwise, then apply expansion-violation
    splits, feeding every product back through the refine chain until a
    candidate certifies or the moves stop producing anything new."""
    for _ in range(_RESCUE_ROUNDS):
        if not pool.entries:
            return None
        _, probs, stored_S = pool.ranked()[0]
        changed = False
        if G.n <= _CLIMB_LIMIT:
            climbed = _pair_climb(G, probs)
            if climbed is not None:
                changed = _polish_into_pool(G, pool, climbed, class_tol) or changed
                probs = climbed
        for cand_S in _candidate_centerings(G, probs, stored_S, class_tol):
            for cand in _violation_splits(G, probs, cand_S, class_tol, seed):
                changed = _polish_into_pool(G, pool, cand, class_tol) or changed
        hit = _first_certified(G, pool, tol, class_tol, seed, val_floor)
        if hit is not None:
            return hit
        if not changed:
            return None
    return None


def _assemble(G, probs, S, report, iterations, converged, class_tol):
    dist = Distribution(_normalized(probs))
    theta = l_value(G, dist)
    if report is None and converged is False:
        try:
            report = verify_balance_certificates(G, dist.probs, S, tol=class_tol)
        except CenteringError:
            report = None
    try:
        levels = tuple(component_levels(G, dist.probs, S, class_tol))
    except CenteringError:
        levels = ()
    return BalancedSolution(
        dist=dist,
        theta=theta,
        tight_edges=tight_edges(G, dist.probs, class_tol),
        component_levels=levels,
        iterations=iterations,
        converged=converged,
        stable_set=tuple(sorted(S)),
        report=report,
    )


def exact_two_valued(G: Graph, S, tol: float = 1e-6, seed: int = 0):
    """Closed-form two-valued candidate on a maximal stable set S,
    returned only when its balance certificates pass (None otherwise).

    When the kernel picks ratio 1 the candidate is uniform and Theorem 1
    decides exactly: present iff the graph has a perfect 2-matching.
    """
    if G.isolated_vertices():
        raise IsolatedVertexError("graph has isolated vertices")
    if not is_maximal_stable(G, S):
        raise CenteringError(f"{sorted(S)} is not a maximal stable set")
    S = tuple(sorted(set(S)))
    alpha = len(S)
    tau = G.n - alpha
    probs = _two_valued_probs(G, S)
    if tau == 0 or t_star(alpha, tau) == 1.0:
        if not _p2m_flag(G):
            return None
        dist = Distribution(probs)
        return BalancedSolution(
            dist=dist,
            theta=2.0 / G.n,
            tight_edges=tight_edges(G, probs, tol),
            component_levels=tuple(component_levels(G, probs, S, tol)),
            iterations=0,
            converged=True,
            stable_set=S,
            report=None,
        )
    try:
        report = verify_balance_certificates(G, probs, S, tol=tol, seed=seed)
    except CenteringError:
        return None
    if not report.all_passed():
        return None
    dist = Distribution(probs)
    return BalancedSolution(
        dist=dist,
        theta=l_value(G, dist),
        tight_edges=report.tight_edges,
        component_levels=tuple(component_levels(G, probs, S, tol)),
        iterations=0,
        converged=True,
        stable_set=S,
        report=report,
    )


def improve_by_perturbation(G: Graph, P, Y, T, eps: float):
    """Shift eps of mass onto each vertex of T, paid uniformly by Y:
    every T vertex gains eps, every Y vertex loses eps*|T|/|Y|.  Total
    mass is conserved; entries must stay positive."""
    probs = list(getattr(P, "probs", P))
    if len(probs) != G.n:
        raise GraphError(f"distribution has {len(probs)} entries for {G.n} vertices")
    Y = sorted(set(Y))
    T = sorted(set(T))
    for v in Y + T:
        if not 0 <= v < G.n:
            raise GraphError(f"vertex {v} outside 0..{G.n - 1}")
    if set(Y) & set(T):
        raise GraphError("Y and T must be disjoint")
    if not isinstance(eps, (int, float)) or eps < 0.0:
        raise DomainError(f"eps must be a nonnegative real, got {eps!r}")
    if eps == 0.0 or not T or not Y:
        return Distribution(tuple(probs))
    rate = eps * len(T) / len(Y)
    for v in T:
        probs[v] += eps
    for v in Y:
        probs[v] -= rate
        if probs[v] <= 0.0:
            raise DomainError(f"perturbation drives vertex {v} to {probs[v]!r}")
    return Distribution(tuple(probs))
