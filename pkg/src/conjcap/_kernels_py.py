"""Pure-Python compute kernels: the ascent inner loop and its helpers.

This module is the reference twin of the compiled extension
``conjcap._kernels_c``.  The two must stay bitwise-identical: same
operation order, same libm calls (CPython's math.log2/math.sqrt bind the
same libm the extension links), sequential sums, and the same splitmix64
tie-breaking stream.  Any edit here must be mirrored in the .pyx file.
"""

from __future__ import annotations

from math import log2, sqrt

BACKEND_NAME = "pure"

_MASK = (1 << 64) - 1


def splitmix64_next(state: int) -> tuple[int, int]:
    """Advance a splitmix64 state; returns (new_state, 64-bit output)."""
    state = (state + 0x9E3779B97F4A7C15) & _MASK
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    z = z ^ (z >> 31)
    return state, z


def hbar_raw(a: float, b: float) -> float:
    """(a+b) log2(a+b) - a log2 a - b log2 b for a, b > 0, unchecked."""
    s = a + b
    return s * log2(s) - a * log2(a) - b * log2(b)


def min_edge_value(p, eu, ev) -> float:
    """Minimum of hbar over the edges (eu[j], ev[j])."""
    vmin = float("inf")
    for j in range(len(eu)):
        a = p[eu[j]]
        b = p[ev[j]]
        s = a + b
        val = s * log2(s) - a * log2(a) - b * log2(b)
        if val < vmin:
            vmin = val
    return vmin


def ascent_chunk(p, best_p, eu, ev, iters, c_step, k0, rng_state, best_l, floor):
    """Run `iters` supergradient steps in place on p; track the best point.

    Each step: find the minimum edge value, pick one minimizing edge
    uniformly at random among exact ties (splitmix64), push mass along
    the hbar supergradient of that edge with step c_step/sqrt(k), project
    back onto the simplex (descending-sort projection), clamp entries to
    `floor`, renormalize.  k counts from k0+1.  Returns the updated
    (best_l, rng_state); p and best_p are modified in place.
    """
    n = len(p)
    m = len(eu)
    for it in range(iters):
        vmin = float("inf")
        first = 0
        nt = 0
        for j in range(m):
            a = p[eu[j]]
            b = p[ev[j]]
            s = a + b
            val = s * log2(s) - a * log2(a) - b * log2(b)
            if val < vmin:
                vmin = val
                first = j
                nt = 1
            elif val == vmin:
                nt += 1
        if vmin > best_l:
            best_l = vmin
            for i in range(n):
                best_p[i] = p[i]
        rng_state, z = splitmix64_next(rng_state)
        if nt == 1:
            jj = first
        else:
            pick = z % nt
            jj = first
            cnt = 0
            for j in range(m):
                a = p[eu[j]]
                b = p[ev[j]]
                s = a + b
                val = s * log2(s) - a * log2(a) - b * log2(b)
                if val == vmin:
                    if cnt == pick:
                        jj = j
                        break
                    cnt += 1
        u = eu[jj]
        v = ev[jj]
        a = p[u]
        b = p[v]
        k = k0 + it + 1
        step = c_step / sqrt(k)
        p[u] = a + step * log2(1.0 + b / a)
        p[v] = b + step * log2(1.0 + a / b)
        # Projection onto the probability simplex via descending sort.
        w = sorted(p, reverse=True)
        css = 0.0
        theta = 0.0
        for r in range(n):
            css += w[r]
            t = (css - 1.0) / (r + 1)
            if w[r] > t:
                theta = t
        for i in range(n):
            x = p[i] - theta
            p[i] = x if x > 0.0 else 0.0
        ssum = 0.0
        for i in range(n):
            if p[i] < floor:
                p[i] = floor
            ssum += p[i]
        for i in range(n):
            p[i] = p[i] / ssum
    return best_l, rng_state
