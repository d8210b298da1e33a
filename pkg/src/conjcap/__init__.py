"""Conjunctive capacity of simple graphs.

The capacity Theta(G) is the maximum over probability distributions P on
the vertices of the minimum edge value hbar(P(x), P(y)), where
hbar(p, q) = (p + q) h(p / (p + q)) and h is the binary entropy.  A
maximizing P is called balanced; its tight-edge structure yields a
stable critical set X with alpha(G) = |X| + alpha(F) for the core
F = G - (X + Gamma X), which carries a perfect 2-matching, and matching
machinery turns nu(F) into stability-number bounds.
"""

from __future__ import annotations

from ._backend import BACKEND
from .errors import (
    CenteringError,
    DomainError,
    GraphError,
    GraphFormatError,
    IsolatedVertexError,
    SizeGuardError,
)
from .graph import (
    Graph,
    InducedSubgraph,
    components,
    delete,
    is_maximal_stable,
    is_stable,
    neighborhood,
    parse_graph,
    power,
)
from .kernel import (
    KernelResult,
    TwoValuedProblem,
    binary_entropy,
    dz_dt,
    hbar,
    phi,
    t_star,
    z,
)
from .matching import (
    HalfIntegralVector,
    TwoMatchingCertificate,
    bipartite_double_cover,
    has_perfect_2matching,
    is_basic_2cover,
    max_2matching,
    max_matching,
    min_fractional_cover,
    uniform_cover_status,
)
from .oracles import (
    alpha_bruteforce,
    omega_bruteforce,
    perfect_2matching_oracle,
    random_graph_corpus,
    tau_bruteforce,
    theta_search,
    write_corpus_snapshot,
)
from .pipeline import SplitDecomposition, split, stability_bounds
from .solver import (
    BalancedSolution,
    Distribution,
    exact_two_valued,
    improve_by_perturbation,
    l_value,
    solve_balanced,
)
from .structure import (
    CheckResult,
    ComponentLevels,
    StructureReport,
    component_levels,
    critical_set,
    e_set,
    expansion_violations,
    tight_critical_set,
    tight_edges,
    verify_balance_certificates,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BalancedSolution",
    "CenteringError",
    "CheckResult",
    "ComponentLevels",
    "Distribution",
    "DomainError",
    "Graph",
    "GraphError",
    "GraphFormatError",
    "HalfIntegralVector",
    "InducedSubgraph",
    "IsolatedVertexError",
    "KernelResult",
    "SizeGuardError",
    "SplitDecomposition",
    "StructureReport",
    "TwoMatchingCertificate",
    "TwoValuedProblem",
    "alpha_bruteforce",
    "binary_entropy",
    "bipartite_double_cover",
    "component_levels",
    "components",
    "critical_set",
    "delete",
    "dz_dt",
    "e_set",
    "exact_two_valued",
    "expansion_violations",
    "has_perfect_2matching",
    "hbar",
    "improve_by_perturbation",
    "is_basic_2cover",
    "is_maximal_stable",
    "is_stable",
    "l_value",
    "max_2matching",
    "max_matching",
    "min_fractional_cover",
    "neighborhood",
    "omega_bruteforce",
    "parse_graph",
    "perfect_2matching_oracle",
    "phi",
    "power",
    "random_graph_corpus",
    "solve_balanced",
    "split",
    "stability_bounds",
    "t_star",
    "tau_bruteforce",
    "theta_search",
    "tight_critical_set",
    "tight_edges",
    "uniform_cover_status",
    "verify_balance_certificates",
    "write_corpus_snapshot",
    "z",
]
