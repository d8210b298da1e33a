"""Scalar entropy kernel.

binary_entropy is the base-2 entropy h of a coin; hbar(p, q) is the
joint quantity (p+q) h(p/(p+q)), symmetric and strictly increasing in
each argument.  For a two-valued distribution that puts q on each of
`alpha` low vertices and p = t*q on each of `tau` high vertices, with
total mass w = q*alpha + p*tau, the objective

    z(t, w, alpha, tau) = hbar(p, q)
                        = w * ((t+1) log2(t+1) - t log2 t) / (t*tau + alpha)

has a unique maximizer over t >= 1: t = 1 when alpha <= tau, otherwise
the unique root > 1 of (alpha - tau) * log(t+1) = alpha * log t.  t_star
finds that root (it depends only on alpha and tau, not on w) and phi
assembles the maximizing levels (q, p) and the value.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from math import isfinite, log, log2

from .errors import DomainError

ROOT_RESIDUAL_TOL = 1e-12


@dataclass(frozen=True)
class TwoValuedProblem:
    """Mass w split over alpha low-probability and tau high-probability
    vertices, all low vertices sharing one value and all high vertices
    another."""

    w: float
    alpha: int
    tau: int

    def __post_init__(self) -> None:
        if not isinstance(self.alpha, int) or self.alpha < 1:
            raise DomainError(f"alpha must be a positive integer, got {self.alpha!r}")
        if not isinstance(self.tau, int) or self.tau < 1:
            raise DomainError(f"tau must be a positive integer, got {self.tau!r}")
        w = self.w
        if not (isinstance(w, (int, float)) and isfinite(w) and 0.0 < w <= 1.0):
            raise DomainError(f"w must lie in (0, 1], got {w!r}")


@dataclass(frozen=True)
class KernelResult:
    """Optimizer of z for one TwoValuedProblem: the ratio t_star = p/q,
    the two levels, and the achieved value."""

    t_star: float
    q: float
    p: float
    value: float


def binary_entropy(x: float) -> float:
    """h(x) = -x log2 x - (1-x) log2(1-x) for x in (0, 1)."""
    if not (isinstance(x, (int, float)) and 0.0 < x < 1.0):
        raise DomainError(f"binary_entropy requires 0 < x < 1, got {x!r}")
    return -x * log2(x) - (1.0 - x) * log2(1.0 - x)


def hbar(p: float, q: float) -> float:
    """(p+q) h(p/(p+q)), the symmetric edge objective."""
    _check_unit_open("p", p)
    _check_unit_open("q", q)
    s = p + q
    return s * log2(s) - p * log2(p) - q * log2(q)


def z(t: float, prob: TwoValuedProblem) -> float:
    """Objective hbar(w t/(t tau + alpha), w/(t tau + alpha)) at ratio t."""
    _check_t(t)
    q = prob.w / (t * prob.tau + prob.alpha)
    p = t * q
    s = p + q
    return s * log2(s) - p * log2(p) - q * log2(q)


def dz_dt(t: float, prob: TwoValuedProblem) -> float:
    """Analytic derivative of z in t:
    w/(t tau + alpha)^2 * (alpha log2(1/t + 1) - tau log2(t + 1))."""
    _check_t(t)
    denom = t * prob.tau + prob.alpha
    return prob.w / (denom * denom) * (
        prob.alpha * log2(1.0 / t + 1.0) - prob.tau * log2(t + 1.0)
    )


@functools.lru_cache(maxsize=None)
def t_star(alpha: int, tau: int) -> float:
    """The maximizing ratio p/q for given counts: 1 when alpha <= tau,
    otherwise the unique root > 1 of (alpha-tau) log(t+1) - alpha log t,
    located by bracketed bisection and polished by Newton steps.  The
    residual is kept below 1e-12 in log space; w plays no role.
    """
    if not isinstance(alpha, int) or alpha < 1:
        raise DomainError(f"alpha must be a positive integer, got {alpha!r}")
    if not isinstance(tau, int) or tau < 1:
        raise DomainError(f"tau must be a positive integer, got {tau!r}")
    if alpha <= tau:
        return 1.0

    d = alpha - tau

    def resid(t: float) -> float:
        return d * log(t + 1.0) - alpha * log(t)

    def resid_prime(t: float) -> float:
        return d / (t + 1.0) - alpha / t

    # resid(1) = (alpha-tau) log 2 > 0 and resid is strictly decreasing
    # past the root; double the upper end until the sign flips.
    lo, hi = 1.0, 2.0
    while resid(hi) > 0.0:
        lo = hi
        hi *= 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if resid(mid) > 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-14 * hi:
            break
    root = 0.5 * (lo + hi)
    for _ in range(4):
        r = resid(root)
        if abs(r) < 1e-16:
            break
        nxt = root - r / resid_prime(root)
        if not (lo <= nxt <= hi):
            break
        root = nxt
    if abs(resid(root)) >= ROOT_RESIDUAL_TOL:
        raise ArithmeticError(
            f"root residual {resid(root):.3e} at t={root!r} for "
            f"alpha={alpha}, tau={tau}"
        )
    return root


def phi(prob: TwoValuedProblem) -> KernelResult:
    """Maximize z over t >= 1 and report levels: q = w/(t tau + alpha),
    p = t q, value = hbar(p, q)."""
    t = t_star(prob.alpha, prob.tau)
    q = prob.w / (t * prob.tau + prob.alpha)
    p = t * q
    return KernelResult(t_star=t, q=q, p=p, value=z(t, prob))


def _check_unit_open(name: str, x) -> None:
    if not (isinstance(x, (int, float)) and 0.0 < x < 1.0):
        raise DomainError(f"{name} must lie in (0, 1), got {x!r}")


def _check_t(t) -> None:
    if not (isinstance(t, (int, float)) and isfinite(t) and t >= 1.0):
        raise DomainError(f"t must be a real >= 1, got {t!r}")
