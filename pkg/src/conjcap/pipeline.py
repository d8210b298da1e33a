"""Decompose the stability number through a balanced distribution.

For a solved distribution P the vertices strictly lighter than a tight
neighbor form a stable set X; removing X with its whole neighborhood
leaves a core F that carries a perfect 2-matching, and

    alpha(G) = |X| + alpha(F),
    |X| + |V(F)| - 2 nu(F)  <=  alpha(G)  <=  |X| + nu(F),

with equality on both sides when nu(F) = |V(F)| / 3.  X is classified
along tight edges: a vertex lighter than a neighbor only across a slack
edge belongs to a flat tight component and must stay inside F (see
structure module notes), otherwise the deletion claim can fail.

Structural predictions that the numbers refute (an isolated vertex
appearing in F, the 2-matching check failing) are reported as anomalies
on the result rather than raised, so corpus runs can separate solver
trouble from math trouble.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import IsolatedVertexError
from .graph import Graph, InducedSubgraph, delete, neighborhood
from .matching import TwoMatchingCertificate, has_perfect_2matching, max_matching
from .oracles import alpha_bruteforce
from .solver import DEFAULT_MAX_ITER, DEFAULT_TOL, BalancedSolution, solve_balanced
from .structure import tight_critical_set


@dataclass
class SplitDecomposition:
    """The split X / Gamma X / F with matching-based stability bounds."""

    X: tuple[int, ...]
    gamma_X: tuple[int, ...]
    F: InducedSubgraph
    f_vertices: tuple[int, ...]
    f_has_p2m: bool
    f_certificate: TwoMatchingCertificate | None
    nu_F: int
    lower: int
    upper: int
    exact_by_nu: bool
    alpha_exact: int | None
    solution: BalancedSolution
    converged: bool
    anomalies: tuple[str, ...] = field(default_factory=tuple)

    def to_dict(self) -> dict:
        return {
            "X": list(self.X),
            "gamma_X": list(self.gamma_X),
            "f_vertices": list(self.f_vertices),
            "f_edges": [
                [self.F.old_ids[u], self.F.old_ids[v]] for u, v in self.F.graph.edges
            ],
            "f_has_p2m": self.f_has_p2m,
            "nu_F": self.nu_F,
            "lower": self.lower,
            "upper": self.upper,
            "exact_by_nu": self.exact_by_nu,
            "alpha_exact": self.alpha_exact,
            "converged": self.converged,
            "anomalies": list(self.anomalies),
        }


def split(
    G: Graph,
    tol: float = DEFAULT_TOL,
    seed: int = 0,
    max_iter: int = DEFAULT_MAX_ITER,
    oracle: bool = False,
) -> SplitDecomposition:
    """Solve for a balanced distribution and split G along its critical set.

    With oracle=True the exact stability number |X| + alpha(F) is also
    computed by brute force (small graphs only).  A non-converged solve
    still produces a decomposition, flagged through `converged` and an
    anomaly entry.
    """
    sol = solve_balanced(G, tol=tol, seed=seed, max_iter=max_iter)
    class_tol = max(tol * 10.0, 1e-12)
    anomalies: list[str] = []
    if not sol.converged:
        anomalies.append("solver did not converge; decomposition unreliable")

    X = tight_critical_set(G, sol.dist, class_tol)
    gamma_X = neighborhood(G, X)
    F = delete(G, set(X) | set(gamma_X))
    f_vertices = F.old_ids

    f_iso = F.graph.isolated_vertices()
    if f_iso:
        originals = [F.old_ids[v] for v in f_iso]
        anomalies.append(f"isolated vertices {originals} inside F")

    certificate: TwoMatchingCertificate | None = None
    if F.graph.n == 0:
        f_has_p2m = True
        certificate = TwoMatchingCertificate((), (), True)
    else:
        try:
            f_has_p2m, result = has_perfect_2matching(F.graph)
        except IsolatedVertexError:
            f_has_p2m = False
            anomalies.append("2-matching check on F failed: isolated vertex")
        else:
            if f_has_p2m:
                certificate = result
            else:
                violator = [F.old_ids[v] for v in result]
                anomalies.append(f"F has no perfect 2-matching, violator {violator}")

    nu_F, _ = max_matching(F.graph)
    lower = len(X) + F.graph.n - 2 * nu_F
    upper = len(X) + nu_F
    exact_by_nu = 3 * nu_F == F.graph.n

    alpha_exact = None
    if oracle:
        a_f, _ = alpha_bruteforce(F.graph) if F.graph.n else (0, ())
        alpha_exact = len(X) + a_f

    return SplitDecomposition(
        X=X,
        gamma_X=gamma_X,
        F=F,
        f_vertices=f_vertices,
        f_has_p2m=f_has_p2m,
        f_certificate=certificate,
        nu_F=nu_F,
        lower=lower,
        upper=upper,
        exact_by_nu=exact_by_nu,
        alpha_exact=alpha_exact,
        solution=sol,
        converged=sol.converged,
        anomalies=tuple(anomalies),
    )


def stability_bounds(
    G: Graph,
    tol: float = DEFAULT_TOL,
    seed: int = 0,
    max_iter: int = DEFAULT_MAX_ITER,
) -> tuple[int, int]:
    """The matching sandwich |X| + |V(F)| - 2 nu(F) <= alpha <= |X| + nu(F)."""
    dec = split(G, tol=tol, seed=seed, max_iter=max_iter)
    return dec.lower, dec.upper
