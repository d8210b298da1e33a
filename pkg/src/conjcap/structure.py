"""Structural analysis of candidate balanced distributions.

Given a graph G, a distribution P, and a maximal stable set S that P is
centered on (every critical vertex inside S), the checks here test the
properties an optimal P must satisfy:

  line_cover    the tight edges (minimum hbar value) touch every vertex
  critical_stable   the critical set (vertices with a strictly heavier
                neighbor) spans no edge
  two_levels    on each component of the tight-edge graph P takes at most
                two values, the smaller on the S side
  level_ratio   each tight component's p/q equals t_star of its own side
                sizes; a component off that ratio wastes mass (its level
                pair could reach the same minimum with less), so the
                distribution cannot be optimal
  claim1        classifying along tight edges only, the set of vertices
                whose tight neighbors all carry equal value is exactly
                V minus (tight-critical set union its neighborhood)
  precedence    components ordered by "my S side touches you" have
                strictly nested levels along the transitive closure
  expansion     for any subset U of a component's non-S side, the kernel
                ratio t_star(|S-side neighbors of U|, |U|) is at least
                p/q of that component

All classifications use one tolerance on value differences.  Expansion is
exhaustive up to 15 non-S vertices per component and seeded-random
sampled above that.

The claim1 check classifies along tight edges rather than all edges: a
vertex whose only heavier neighbors sit across slack edges can live in a
uniform tight component (chair graph 0-1, 0-2, 0-3, 3-4 at its optimum:
vertex 3 is lighter than 0 across the slack edge 0-3 while its tight
component {3,4} is flat).  The identity e = V - (m + Gamma m) holds in
the tight classification and fails in the plain one on such graphs, so
the plain sets are reported as data while the identity is checked where
it is a theorem.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations

from .errors import CenteringError, GraphError
from .graph import Graph, components, is_maximal_stable, is_stable, neighborhood
from .kernel import t_star
from ._backend import hbar_raw

DEFAULT_STRUCTURE_TOL = 1e-6
EXHAUSTIVE_SUBSET_LIMIT = 15
SAMPLED_SUBSETS = 2000


@dataclass(frozen=True)
class ComponentLevels:
    """One tight-edge component with its fitted low/high values."""

    vertices: tuple[int, ...]
    q: float
    p: float
    max_dev: float
    ok: bool


@dataclass(frozen=True)
class CheckResult:
    passed: bool
    detail: str = ""


@dataclass
class StructureReport:
    tight_edges: tuple[tuple[int, int], ...]
    m_set: tuple[int, ...]
    e_set: tuple[int, ...]
    components: tuple[ComponentLevels, ...]
    precedence: tuple[tuple[int, int], ...]
    checks: dict[str, CheckResult] = field(default_factory=dict)
    expansion_sampled: int = 0

    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def to_dict(self) -> dict:
        return {
            "tight_edges": [list(e) for e in self.tight_edges],
            "m_set": list(self.m_set),
            "e_set": list(self.e_set),
            "components": [
                {
                    "vertices": list(c.vertices),
                    "q": c.q,
                    "p": c.p,
                    "max_dev": c.max_dev,
                    "ok": c.ok,
                }
                for c in self.components
            ],
            "precedence": [list(pair) for pair in self.precedence],
            "checks": {
                name: {"passed": c.passed, "detail": c.detail}
                for name, c in sorted(self.checks.items())
            },
            "expansion_sampled": self.expansion_sampled,
            "all_passed": self.all_passed(),
        }


def _probs(G: Graph, P) -> tuple[float, ...]:
    probs = tuple(getattr(P, "probs", P))
    if len(probs) != G.n:
        raise GraphError(f"distribution has {len(probs)} entries for {G.n} vertices")
    if any(not x > 0.0 for x in probs):
        raise GraphError("distribution entries must be positive")
    return probs


def tight_edges(G: Graph, P, tol: float) -> tuple[tuple[int, int], ...]:
    """Edges whose hbar value is within tol of the minimum over edges."""
    probs = _probs(G, P)
    if not G.edges:
        return ()
    vals = [hbar_raw(probs[u], probs[v]) for u, v in G.edges]
    low = min(vals)
    return tuple(e for e, v in zip(G.edges, vals) if v <= low + tol)


def critical_set(G: Graph, P, tol: float) -> tuple[int, ...]:
    """Vertices with some neighbor strictly heavier (beyond tol)."""
    probs = _probs(G, P)
    out = []
    for x in range(G.n):
        if any(probs[y] - probs[x] > tol for y in G.adj[x]):
            out.append(x)
    return tuple(out)


def e_set(G: Graph, P, tol: float) -> tuple[int, ...]:
    """Vertices whose value matches every neighbor's within tol."""
    probs = _probs(G, P)
    out = []
    for x in range(G.n):
        if all(abs(probs[y] - probs[x]) <= tol for y in G.adj[x]):
            out.append(x)
    return tuple(out)


def tight_critical_set(G: Graph, P, tol: float) -> tuple[int, ...]:
    """Vertices strictly lighter than a neighbor across a tight edge.

    The subset of critical_set whose witness edge is tight.  This is the
    set whose deletion (with its neighborhood) provably leaves a graph
    with a perfect 2-matching; a vertex critical only across slack edges
    sits inside a flat tight component and must stay with it.
    """
    probs = _probs(G, P)
    tight = tight_edges(G, P, tol)
    out = set()
    for u, v in tight:
        if probs[v] - probs[u] > tol:
            out.add(u)
        elif probs[u] - probs[v] > tol:
            out.add(v)
    return tuple(sorted(out))


def component_levels(G: Graph, P, S, tol: float) -> list[ComponentLevels]:
    """Fit the two-level structure on each tight-edge component.

    q is the mean over the component's S vertices, p over the rest; a
    side that is empty borrows the other side's level.  ok means no
    member deviates from its level by more than tol.
    """
    probs = _probs(G, P)
    S = frozenset(S)
    if not is_maximal_stable(G, S):
        raise CenteringError(f"{sorted(S)} is not a maximal stable set")
    tight = tight_edges(G, P, tol)
    out = []
    for comp in components(G, edge_subset=tight):
        svals = [probs[v] for v in comp if v in S]
        ovals = [probs[v] for v in comp if v not in S]
        q = sum(svals) / len(svals) if svals else None
        p = sum(ovals) / len(ovals) if ovals else None
        if q is None:
            q = p
        if p is None:
            p = q
        dev = max(
            abs(probs[v] - (q if v in S else p)) for v in comp
        )
        out.append(ComponentLevels(comp, q, p, dev, dev <= tol))
    return out


def verify_balance_certificates(
    G: Graph,
    P,
    S,
    tol: float = DEFAULT_STRUCTURE_TOL,
    seed: int = 0,
    exhaustive_limit: int = EXHAUSTIVE_SUBSET_LIMIT,
    samples: int = SAMPLED_SUBSETS,
) -> StructureReport:
    """Evaluate every structural check for P centered on S.

    Raises CenteringError when S is not maximal stable or some
    tight-critical vertex falls outside S; any other defect lands in the
    report as a failed check, not an exception.

    Centering is judged on the tight-critical set, not the plain critical
    set: at an optimum a vertex may sit below a neighbor across a slack
    edge while its own tight component is flat, and such a vertex can
    even be adjacent to another of the same kind, so no stable set could
    contain the plain critical set.  Only the tight witnesses force a
    vertex to the light side of the structure.
    """
    probs = _probs(G, P)
    S = frozenset(S)
    if not is_maximal_stable(G, S):
        raise CenteringError(f"{sorted(S)} is not a maximal stable set")
    m = critical_set(G, P, tol)
    m_t = tight_critical_set(G, P, tol)
    if not set(m_t) <= S:
        raise CenteringError(
            f"tight-critical set {list(m_t)} is not inside the stable set {sorted(S)}"
        )
    tight = tight_edges(G, P, tol)
    comps = components(G, edge_subset=tight)
    levels = component_levels(G, P, S, tol)
    checks: dict[str, CheckResult] = {}

    covered = set()
    for u, v in tight:
        covered.add(u)
        covered.add(v)
    missing = [v for v in range(G.n) if v not in covered]
    checks["line_cover"] = CheckResult(
        not missing, "" if not missing else f"vertices without tight edges: {missing}"
    )

    checks["critical_stable"] = CheckResult(
        is_stable(G, m_t),
        "" if is_stable(G, m_t) else f"tight-critical set {list(m_t)} spans an edge",
    )

    bad_levels = [
        (lv.vertices, lv.max_dev)
        for lv in levels
        if not lv.ok or lv.q > lv.p + tol
    ]
    checks["two_levels"] = CheckResult(
        not bad_levels,
        "" if not bad_levels else f"components off the two-level structure: {bad_levels}",
    )

    ratio_bad = []
    for i, lv in enumerate(levels):
        if len(lv.vertices) < 2:
            continue
        a_side = sum(1 for v in lv.vertices if v in S)
        t_side = len(lv.vertices) - a_side
        if a_side == 0 or t_side == 0 or lv.q <= 0.0:
            continue
        want = t_star(a_side, t_side)
        ratio = lv.p / lv.q
        slack = tol * (1.0 + ratio) / lv.q + 1e-12
        if abs(ratio - want) > slack:
            ratio_bad.append((i, round(ratio, 9), round(want, 9)))
    checks["level_ratio"] = CheckResult(
        not ratio_bad,
        ""
        if not ratio_bad
        else f"components off their optimal ratio (index, p/q, t_star): {ratio_bad}",
    )

    got_e = e_set(G, P, tol)
    tight_adj = {v: set() for v in range(G.n)}
    for u, v in tight:
        tight_adj[u].add(v)
        tight_adj[v].add(u)
    e_tight = tuple(
        x
        for x in range(G.n)
        if all(abs(probs[y] - probs[x]) <= tol for y in tight_adj[x])
    )
    banned = set(m_t) | set(neighborhood(G, m_t))
    expected_e = tuple(v for v in range(G.n) if v not in banned)
    checks["claim1"] = CheckResult(
        e_tight == expected_e,
        ""
        if e_tight == expected_e
        else f"tight-equal set {list(e_tight)} != V-(m+Gm) {list(expected_e)} "
        f"(tight-critical m {list(m_t)})",
    )

    comp_of = {}
    for i, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = i
    direct = set()
    for u, v in G.edges:
        cu, cv = comp_of[u], comp_of[v]
        if cu == cv:
            continue
        if u in S:
            direct.add((cu, cv))
        if v in S:
            direct.add((cv, cu))
    closure = _transitive_closure(len(comps), direct)
    prec_bad = []
    for i, j in sorted(closure):
        if i == j:
            prec_bad.append((i, j, "cyclic precedence"))
            continue
        qi, pi = levels[i].q, levels[i].p
        qj, pj = levels[j].q, levels[j].p
        if not (qj < qi - tol and qi <= pi + tol and pi < pj - tol):
            prec_bad.append((i, j, f"levels not nested: ({qi:.6g},{pi:.6g}) vs ({qj:.6g},{pj:.6g})"))
    checks["precedence"] = CheckResult(
        not prec_bad, "" if not prec_bad else f"violations: {prec_bad}"
    )

    exp_bad, sampled_total = expansion_violations(
        G, S, levels, tol, exhaustive_limit=exhaustive_limit, samples=samples, seed=seed
    )
    checks["expansion"] = CheckResult(
        not exp_bad,
        "" if not exp_bad else f"violating (component, U, |X∩ΓU|, bound, p/q): {exp_bad}",
    )

    report = StructureReport(
        tight_edges=tight,
        m_set=m,
        e_set=got_e,
        components=tuple(levels),
        precedence=tuple(sorted(direct)),
        checks=checks,
        expansion_sampled=sampled_total,
    )
    return report


def expansion_violations(
    G: Graph,
    S,
    levels,
    tol: float,
    exhaustive_limit: int = EXHAUSTIVE_SUBSET_LIMIT,
    samples: int = SAMPLED_SUBSETS,
    seed: int = 0,
):
    """Scan each level component for subsets breaking the expansion bound.

    For a component with levels (q, p), every subset U of its non-S side
    must satisfy t_star(|X(F) ∩ ΓU|, |U|) >= p/q; a violating U names a
    subgraph too heavy for its stable-side support.  Returns the list of
    (component_index, U, |X(F) ∩ ΓU|, bound, p/q) violations (at most one
    per component, the first found in deterministic order) and the number
    of sampled subsets used for sides too large to enumerate.
    """
    S = frozenset(S)
    sampled_total = 0
    bad = []
    rng = random.Random(seed)
    for i, lv in enumerate(levels):
        comp = lv.vertices
        x_side = [v for v in comp if v in S]
        other = [v for v in comp if v not in S]
        if not other:
            continue
        ratio = lv.p / lv.q
        slack = tol * (1.0 + ratio) / lv.q + 1e-12
        exhaustive = len(other) <= exhaustive_limit
        if exhaustive:
            subsets = _all_nonempty_subsets(other)
        else:
            # Always probe the full side and every singleton, then sample.
            fixed = [tuple(other)] + [(v,) for v in other]
            subsets = iter(fixed + list(_sampled_subsets(other, samples, rng)))
            sampled_total += samples
        for U in subsets:
            gamma_u = set(neighborhood(G, U))
            a = sum(1 for v in x_side if v in gamma_u)
            bound = t_star(a, len(U)) if a >= 1 else 1.0
            if bound < ratio - slack:
                bad.append((i, tuple(U), a, bound, ratio))
                break
    return bad, sampled_total


def _transitive_closure(k: int, direct) -> set:
    reach = {i: set() for i in range(k)}
    for i, j in direct:
        reach[i].add(j)
    changed = True
    while changed:
        changed = False
        for i in range(k):
            add = set()
            for j in reach[i]:
                add |= reach[j]
            if not add <= reach[i]:
                reach[i] |= add
                changed = True
    return {(i, j) for i in range(k) for j in reach[i]}


def _all_nonempty_subsets(items):
    for size in range(1, len(items) + 1):
        yield from combinations(items, size)


def _sampled_subsets(items, count: int, rng: random.Random):
    n = len(items)
    for _ in range(count):
        mask = rng.getrandbits(n)
        if mask == 0:
            mask = 1 + rng.randrange(n)
        yield tuple(items[i] for i in range(n) if mask >> i & 1)
