"""Structural objects of a candidate optimum: tight edges, critical sets,
levels, ordering, and the certificate checks.

The critical set collects vertices strictly lighter than some neighbor.
Classified over all edges that set can be badly behaved at true optima
(the chair graph puts a non-critical vertex in it; denser graphs can make
it span an edge), while classified over tight edges only it stays stable,
sits inside the centering set, and satisfies the complement identity
e = V - (m + Gamma m).  The certificate suite must accept solver optima
and reject the uniform point of the path.
"""

from __future__ import annotations

import math

import pytest

from conjcap import (
    CenteringError,
    Distribution,
    Graph,
    alpha_bruteforce,
    component_levels,
    critical_set,
    delete,
    e_set,
    expansion_violations,
    is_stable,
    solve_balanced,
    t_star,
    tight_critical_set,
    tight_edges,
    verify_balance_certificates,
)
from _brute import chair, complete, cycle, disjoint_union, path, star

TOL = 1e-6


def test_tight_edges_uniform_cycle():
    G = cycle(5)
    assert tight_edges(G, Distribution.uniform(5), TOL) == tuple(G.edges)


def test_tight_edges_path_balanced_and_uniform():
    G = path(3)
    sol = solve_balanced(G)
    assert tight_edges(G, sol.dist, TOL) == ((0, 1), (1, 2))
    assert tight_edges(G, Distribution.uniform(3), TOL) == ((0, 1), (1, 2))


def test_critical_set_uniform_cycle_is_empty():
    assert critical_set(cycle(5), Distribution.uniform(5), TOL) == ()


def test_critical_set_path_balanced():
    G = path(3)
    sol = solve_balanced(G)
    assert critical_set(G, sol.dist, TOL) == (0, 2)


def test_critical_set_star_balanced_is_the_leaves():
    G = star(3)
    sol = solve_balanced(G)
    assert critical_set(G, sol.dist, TOL) == (1, 2, 3)


def test_e_set_uniform_cycle_is_everything():
    assert e_set(cycle(5), Distribution.uniform(5), TOL) == (0, 1, 2, 3, 4)


def test_e_set_path_balanced_is_empty():
    G = path(3)
    sol = solve_balanced(G)
    assert e_set(G, sol.dist, TOL) == ()


def test_e_set_union_with_triangle():
    G = disjoint_union(path(3), complete(3))
    sol = solve_balanced(G)
    assert e_set(G, sol.dist, TOL) == (3, 4, 5)


def test_m_and_e_are_disjoint():
    for G in (cycle(5), path(3), chair(), star(4)):
        sol = solve_balanced(G)
        m = set(critical_set(G, sol.dist, TOL))
        e = set(e_set(G, sol.dist, TOL))
        assert m.isdisjoint(e)


def test_component_levels_uniform_cycle():
    levels = component_levels(cycle(5), Distribution.uniform(5), (0, 2), TOL)
    assert len(levels) == 1
    lv = levels[0]
    assert lv.vertices == (0, 1, 2, 3, 4)
    assert abs(lv.q - 0.2) < 1e-12 and abs(lv.p - 0.2) < 1e-12
    assert lv.ok


def test_component_levels_path_balanced():
    G = path(3)
    sol = solve_balanced(G)
    levels = component_levels(G, sol.dist, (0, 2), TOL)
    assert len(levels) == 1
    assert abs(levels[0].q - 0.2763932) < 1e-6
    assert abs(levels[0].p - 0.4472136) < 1e-6


def test_component_levels_fit_the_uniform_path_too():
    # The fit itself succeeds at the uniform point; rejection is the
    # certificate suite's job.
    levels = component_levels(path(3), Distribution.uniform(3), (0, 2), TOL)
    assert len(levels) == 1
    assert abs(levels[0].q - 1.0 / 3.0) < 1e-12
    assert abs(levels[0].p - 1.0 / 3.0) < 1e-12
    assert levels[0].ok


def test_component_levels_requires_maximal_stable():
    with pytest.raises(CenteringError):
        component_levels(cycle(5), Distribution.uniform(5), (0,), TOL)


def test_verify_uniform_cycle_all_pass():
    rep = verify_balance_certificates(cycle(5), Distribution.uniform(5), (0, 2))
    assert all(c.passed for c in rep.checks.values())
    assert rep.to_dict()["all_passed"]


def test_verify_uniform_path_fails_the_ratio_check():
    rep = verify_balance_certificates(path(3), Distribution.uniform(3), (0, 2))
    assert not rep.checks["level_ratio"].passed
    assert not rep.to_dict()["all_passed"]


def test_verify_balanced_path_all_pass():
    G = path(3)
    sol = solve_balanced(G)
    rep = verify_balance_certificates(G, sol.dist, sol.stable_set)
    assert all(c.passed for c in rep.checks.values())


def test_verify_check_names():
    rep = verify_balance_certificates(cycle(5), Distribution.uniform(5), (0, 2))
    assert sorted(rep.checks) == [
        "claim1",
        "critical_stable",
        "expansion",
        "level_ratio",
        "line_cover",
        "precedence",
        "two_levels",
    ]


def test_verify_requires_centering():
    G = path(3)
    sol = solve_balanced(G)
    # {1} is maximal stable but leaves the tight-critical set {0,2} outside.
    with pytest.raises(CenteringError):
        verify_balance_certificates(G, sol.dist, (1,))


def test_report_serialization_schema():
    G = chair()
    sol = solve_balanced(G)
    d = verify_balance_certificates(G, sol.dist, sol.stable_set).to_dict()
    assert list(d) == [
        "tight_edges",
        "m_set",
        "e_set",
        "components",
        "precedence",
        "checks",
        "expansion_sampled",
        "all_passed",
    ]
    for comp in d["components"]:
        assert comp["q"] <= comp["p"] + TOL


def test_chair_plain_critical_set_contains_a_non_critical_vertex():
    # At the chair optimum vertex 3 is lighter than vertex 0 across the
    # slack edge 0-3, so the plain classification marks it.  Deleting it
    # does not drop the stability number, so it is not critical, and the
    # membership identity fails for the plain sets.
    G = chair()
    sol = solve_balanced(G)
    m_plain = critical_set(G, sol.dist, TOL)
    assert m_plain == (1, 2, 3)
    alpha, _ = alpha_bruteforce(G)
    alpha_minus, _ = alpha_bruteforce(delete(G, (3,)).graph)
    assert alpha == 3 and alpha_minus == 3

    m_tight = tight_critical_set(G, sol.dist, TOL)
    assert m_tight == (1, 2)
    for x in m_tight:
        ax, _ = alpha_bruteforce(delete(G, (x,)).graph)
        assert ax == alpha - 1


def test_chair_certificates_pass_with_tight_classification():
    G = chair()
    sol = solve_balanced(G)
    rep = verify_balance_certificates(G, sol.dist, sol.stable_set)
    assert all(c.passed for c in rep.checks.values())
    assert rep.m_set == (1, 2, 3)


def test_chair_precedence_is_strictly_nested():
    G = chair()
    sol = solve_balanced(G)
    rep = verify_balance_certificates(G, sol.dist, sol.stable_set)
    levels = {lv.vertices: lv for lv in rep.components}
    inner = levels[(3, 4)]
    outer = levels[(0, 1, 2)]
    assert outer.q < inner.q - TOL
    assert inner.p < outer.p - TOL


def test_plain_critical_set_can_span_an_edge():
    # Both endpoints of the edge 5-6 sit below vertex 0 across slack edges
    # at the optimum, so the plain critical set is not even stable; the
    # tight classification stays stable and inside the centering set.
    G = Graph(7, ((0, 1), (0, 2), (0, 3), (0, 5), (0, 6), (3, 4), (4, 6), (5, 6)))
    sol = solve_balanced(G)
    assert sol.converged
    m_plain = set(critical_set(G, sol.dist, TOL))
    assert {5, 6} <= m_plain
    assert not is_stable(G, m_plain)
    m_tight = tight_critical_set(G, sol.dist, TOL)
    assert is_stable(G, m_tight)
    assert set(m_tight) <= set(sol.stable_set)
    rep = verify_balance_certificates(G, sol.dist, sol.stable_set)
    assert all(c.passed for c in rep.checks.values())
    # Capacity at this optimum: one golden component and one flat one.
    golden = (1.0 + math.sqrt(5.0)) / 2.0
    expected = 1.0 / (1.0 / math.log2(golden) + 2.0)
    assert abs(sol.theta - expected) < 1e-9


def test_expansion_violations_empty_at_optima():
    for G in (cycle(5), path(3), chair()):
        sol = solve_balanced(G)
        levels = component_levels(G, sol.dist, sol.stable_set, TOL)
        bad, _ = expansion_violations(G, sol.stable_set, levels, TOL)
        assert bad == []


def test_expansion_violation_reported_for_an_overdriven_ratio():
    # Push the path's center far above the golden optimum: the subset {1}
    # then demands a ratio above t_star(2, 1) and must be flagged.
    G = path(3)
    q = 0.15
    P = (q, 1.0 - 2.0 * q, q)
    levels = component_levels(G, P, (0, 2), 1e-3)
    bad, _ = expansion_violations(G, (0, 2), levels, 1e-3)
    assert len(bad) == 1
    comp_index, U, a, bound, ratio = bad[0]
    assert U == (1,) and a == 2
    assert abs(bound - t_star(2, 1)) < 1e-12
    assert ratio > bound


def test_verify_level_ratio_rejects_wrong_ratio_two_level_points():
    # A two-level point with ratio 1.2 instead of the golden ratio is
    # feasible and two-leveled but wastes mass; only level_ratio sees it.
    G = path(3)
    q = 1.0 / 3.2
    P = (q, 1.2 * q, q)
    rep = verify_balance_certificates(G, P, (0, 2))
    assert rep.checks["two_levels"].passed
    assert not rep.checks["level_ratio"].passed
