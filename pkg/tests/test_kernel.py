"""Scalar entropy kernel: h, hbar, the two-valued objective and its optimizer.

For a distribution taking a low value q on alpha vertices and a high value
p = t*q on tau vertices with total mass w, the objective along the ratio t is
z(t) = hbar(wt/(t*tau+alpha), w/(t*tau+alpha)).  Its derivative vanishes where
alpha*log(1/t+1) = tau*log(t+1), equivalently at the root of
(t+1)^(alpha-tau) = t^alpha, which is t = 1 exactly when alpha <= tau.  The
golden ratio shows up as the optimizer for alpha = 2, tau = 1.
"""

from __future__ import annotations

import math
import random

import pytest

from conjcap import (
    DomainError,
    TwoValuedProblem,
    binary_entropy,
    dz_dt,
    hbar,
    phi,
    t_star,
    z,
)

GOLDEN = (1.0 + math.sqrt(5.0)) / 2.0


def test_binary_entropy_half():
    assert binary_entropy(0.5) == 1.0


def test_binary_entropy_symmetry():
    rng = random.Random(1)
    for _ in range(50):
        x = rng.uniform(1e-6, 1.0 - 1e-6)
        assert abs(binary_entropy(x) - binary_entropy(1.0 - x)) < 1e-12


def test_binary_entropy_golden_point():
    # Reference value from a 40-digit evaluation of the defining formula.
    assert abs(binary_entropy(0.61803399) - 0.9594187273548687) < 1e-12


def test_binary_entropy_domain():
    for x in (0.0, 1.0, -0.1, 1.1):
        with pytest.raises(DomainError):
            binary_entropy(x)


def test_hbar_half_half():
    assert hbar(0.5, 0.5) == 1.0


def test_hbar_symmetry():
    rng = random.Random(2)
    for _ in range(50):
        p = rng.uniform(1e-6, 1.0 - 1e-6)
        q = rng.uniform(1e-6, 1.0 - 1e-6)
        assert abs(hbar(p, q) - hbar(q, p)) < 1e-12


def test_hbar_golden_pair():
    # p = 1/sqrt(5), q = (5 - sqrt(5))/10, the two-valued optimum of the path.
    assert abs(hbar(0.4472136, 0.2763932) - 0.694242) < 1e-6


def test_hbar_strictly_increasing():
    rng = random.Random(3)
    for _ in range(200):
        p = rng.uniform(1e-4, 0.5)
        q = rng.uniform(1e-4, 0.5)
        dp = rng.choice([0.0, rng.uniform(1e-6, 0.4)])
        dq = rng.uniform(1e-6, 0.4) if dp == 0.0 else rng.choice([0.0, rng.uniform(1e-6, 0.4)])
        assert hbar(p + dp, q + dq) > hbar(p, q)


def test_hbar_domain():
    for p, q in ((0.0, 0.5), (0.5, 0.0), (1.0, 0.5), (-0.2, 0.5)):
        with pytest.raises(DomainError):
            hbar(p, q)


def test_z_at_one_is_uniform_value():
    for alpha in range(1, 6):
        for tau in range(1, 6):
            prob = TwoValuedProblem(1.0, alpha, tau)
            assert abs(z(1.0, prob) - 2.0 / (alpha + tau)) < 1e-12


def test_z_golden_point():
    prob = TwoValuedProblem(1.0, 2, 1)
    assert abs(z(1.6180340, prob) - 0.694242) < 1e-6


def test_z_is_hbar_at_the_level_point():
    rng = random.Random(4)
    for _ in range(100):
        t = rng.uniform(1.0, 8.0)
        w = rng.uniform(0.05, 1.0)
        alpha = rng.randint(1, 9)
        tau = rng.randint(1, 9)
        prob = TwoValuedProblem(w, alpha, tau)
        q = w / (t * tau + alpha)
        assert abs(z(t, prob) - hbar(t * q, q)) < 1e-12


def test_z_closed_form():
    # z = w * ((t+1)log2(t+1) - t*log2(t)) / (t*tau + alpha)
    rng = random.Random(5)
    for _ in range(100):
        t = rng.uniform(1.0 + 1e-9, 6.0)
        w = rng.uniform(0.05, 1.0)
        alpha = rng.randint(1, 9)
        tau = rng.randint(1, 9)
        prob = TwoValuedProblem(w, alpha, tau)
        closed = w * ((t + 1) * math.log2(t + 1) - t * math.log2(t)) / (t * tau + alpha)
        assert abs(z(t, prob) - closed) < 1e-12


def test_z_rejects_t_below_one():
    with pytest.raises(DomainError):
        z(0.5, TwoValuedProblem(1.0, 2, 1))


def test_two_valued_problem_validation():
    with pytest.raises(DomainError):
        TwoValuedProblem(0.0, 1, 1)
    with pytest.raises(DomainError):
        TwoValuedProblem(1.5, 1, 1)
    with pytest.raises(DomainError):
        TwoValuedProblem(1.0, 0, 1)
    with pytest.raises(DomainError):
        TwoValuedProblem(1.0, 1, 0)


def test_dz_dt_balanced_case_is_flat_at_one():
    assert dz_dt(1.0, TwoValuedProblem(1.0, 1, 1)) == 0.0


def test_dz_dt_known_value():
    assert abs(dz_dt(1.0, TwoValuedProblem(1.0, 2, 1)) - 1.0 / 9.0) < 1e-12


def test_dz_dt_matches_central_difference():
    rng = random.Random(6)
    for _ in range(200):
        t = rng.uniform(1.01, 8.0)
        w = rng.uniform(0.05, 1.0)
        alpha = rng.randint(1, 9)
        tau = rng.randint(1, 9)
        prob = TwoValuedProblem(w, alpha, tau)
        step = 1e-6
        fd = (z(t + step, prob) - z(t - step, prob)) / (2.0 * step)
        exact = dz_dt(t, prob)
        # Cancellation caps the difference quotient near 5e-11, so the
        # relative scale needs a floor where the derivative vanishes.
        scale = max(abs(exact), 1e-3)
        assert abs(exact - fd) / scale < 1e-6


def test_dz_dt_rejects_t_below_one():
    with pytest.raises(DomainError):
        dz_dt(0.9, TwoValuedProblem(1.0, 2, 1))


def test_dz_dt_sign_pattern():
    # alpha <= tau: strictly decreasing past 1; alpha > tau: one sign change
    # at the optimizer.
    grid = [1.0 + 10.0**k for k in range(-6, 3)]
    for alpha, tau in ((1, 1), (2, 3), (3, 3), (1, 5)):
        prob = TwoValuedProblem(1.0, alpha, tau)
        for t in grid:
            assert dz_dt(t, prob) < 0.0
    for alpha, tau in ((2, 1), (3, 1), (5, 2), (7, 3)):
        prob = TwoValuedProblem(1.0, alpha, tau)
        root = t_star(alpha, tau)
        signs = [dz_dt(t, prob) for t in grid]
        for t, s in zip(grid, signs):
            if t < root - 1e-9:
                assert s > 0.0
            elif t > root + 1e-9:
                assert s < 0.0


def test_t_star_is_one_iff_alpha_at_most_tau():
    for alpha in range(1, 10):
        for tau in range(1, 10):
            t = t_star(alpha, tau)
            if alpha <= tau:
                assert t == 1.0
            else:
                assert t > 1.0


def test_t_star_golden_ratio():
    assert abs(t_star(2, 1) - GOLDEN) < 1e-10


def test_t_star_three_one():
    assert abs(t_star(3, 1) - 2.1479) < 1e-4


def test_t_star_root_residual_in_log_space():
    for alpha in range(2, 51):
        for tau in range(1, alpha):
            t = t_star(alpha, tau)
            residual = (alpha - tau) * math.log(t + 1.0) - alpha * math.log(t)
            assert abs(residual) < 1e-10


def test_t_star_monotone_in_the_ratio():
    # alpha/tau < alpha'/tau' (both above 1) iff t_star is smaller.
    pairs = [(2, 1), (3, 2), (3, 1), (4, 3), (5, 2), (7, 2), (9, 4), (11, 3)]
    for a1, t1 in pairs:
        for a2, t2 in pairs:
            r1, r2 = a1 / t1, a2 / t2
            if abs(r1 - r2) < 1e-12:
                continue
            assert (r1 < r2) == (t_star(a1, t1) < t_star(a2, t2))


def test_t_star_has_no_mass_parameter():
    import inspect

    params = list(inspect.signature(t_star).parameters)
    assert params == ["alpha", "tau"]


def test_phi_uniform_edge():
    res = phi(TwoValuedProblem(1.0, 1, 1))
    assert res.t_star == 1.0
    assert abs(res.value - 1.0) < 1e-12


def test_phi_golden_case():
    res = phi(TwoValuedProblem(1.0, 2, 1))
    assert abs(res.t_star - 1.6180340) < 1e-6
    assert abs(res.q - 0.2763932) < 1e-6
    assert abs(res.p - 0.4472136) < 1e-6
    assert abs(res.value - 0.694242) < 1e-6


def test_phi_flat_case():
    res = phi(TwoValuedProblem(1.0, 2, 3))
    assert res.t_star == 1.0
    assert abs(res.value - 0.4) < 1e-12


def test_phi_result_invariants():
    rng = random.Random(7)
    for _ in range(100):
        w = rng.uniform(0.05, 1.0)
        alpha = rng.randint(1, 12)
        tau = rng.randint(1, 12)
        res = phi(TwoValuedProblem(w, alpha, tau))
        assert abs(res.p - res.t_star * res.q) < 1e-12
        assert abs(res.q * alpha + res.p * tau - w) < 1e-12
        assert abs(res.value - hbar(res.p, res.q)) < 1e-12


def test_phi_is_the_maximum_over_t():
    rng = random.Random(8)
    for _ in range(50):
        w = rng.uniform(0.1, 1.0)
        alpha = rng.randint(1, 8)
        tau = rng.randint(1, 8)
        prob = TwoValuedProblem(w, alpha, tau)
        res = phi(prob)
        for _ in range(20):
            t = rng.uniform(1.0, 10.0)
            assert z(t, prob) <= res.value + 1e-12
