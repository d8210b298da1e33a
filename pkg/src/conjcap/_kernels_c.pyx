# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled compute kernels: the ascent inner loop and its helpers.

Twin of conjcap._kernels_py.  Operation order, libm calls, and the
splitmix64 tie-breaking stream are kept identical so both backends
produce bitwise-identical floats (the build disables FP contraction).
Any edit here must be mirrored in the pure module.
"""

from libc.math cimport log2, sqrt, INFINITY
from libc.stdlib cimport malloc, free

BACKEND_NAME = "c"


cdef inline unsigned long long _mix(unsigned long long state, unsigned long long *out) noexcept nogil:
    state = state + 0x9E3779B97F4A7C15ULL
    cdef unsigned long long z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
    z = z ^ (z >> 31)
    out[0] = z
    return state


def splitmix64_next(state):
    """Advance a splitmix64 state; returns (new_state, 64-bit output)."""
    cdef unsigned long long s = state
    cdef unsigned long long z
    s = _mix(s, &z)
    return s, z


def hbar_raw(double a, double b):
    """(a+b) log2(a+b) - a log2 a - b log2 b for a, b > 0, unchecked."""
    cdef double s = a + b
    return s * log2(s) - a * log2(a) - b * log2(b)


def min_edge_value(double[::1] p, int[::1] eu, int[::1] ev):
    """Minimum of hbar over the edges (eu[j], ev[j])."""
    cdef Py_ssize_t m = eu.shape[0]
    cdef Py_ssize_t j
    cdef double a, b, s, val
    cdef double vmin = INFINITY
    for j in range(m):
        a = p[eu[j]]
        b = p[ev[j]]
        s = a + b
        val = s * log2(s) - a * log2(a) - b * log2(b)
        if val < vmin:
            vmin = val
    return vmin


def ascent_chunk(double[::1] p, double[::1] best_p, int[::1] eu, int[::1] ev,
                 int iters, double c_step, long k0, rng_state,
                 double best_l, double floor):
    """Run `iters` supergradient steps in place on p; track the best point.

    Same contract as the pure twin: returns (best_l, rng_state) with p and
    best_p modified in place.
    """
    cdef Py_ssize_t n = p.shape[0]
    cdef Py_ssize_t m = eu.shape[0]
    cdef unsigned long long state = rng_state
    cdef unsigned long long z
    cdef double bl = best_l
    cdef double *w = <double *> malloc(n * sizeof(double))
    if w == NULL:
        raise MemoryError()
    cdef Py_ssize_t it, j, jj, first, nt, u, v, i, r, j2
    cdef long k
    cdef unsigned long long pick
    cdef unsigned long long cnt
    cdef double a, b, s, val, vmin, step, css, theta, t, x, ssum, key
    try:
        for it in range(iters):
            vmin = INFINITY
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
            if vmin > bl:
                bl = vmin
                for i in range(n):
                    best_p[i] = p[i]
            state = _mix(state, &z)
            if nt == 1:
                jj = first
            else:
                pick = z % (<unsigned long long> nt)
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
            step = c_step / sqrt(<double> k)
            p[u] = a + step * log2(1.0 + b / a)
            p[v] = b + step * log2(1.0 + a / b)
            # Projection onto the probability simplex via descending sort.
            for i in range(n):
                w[i] = p[i]
            for i in range(1, n):
                key = w[i]
                j2 = i - 1
                while j2 >= 0 and w[j2] < key:
                    w[j2 + 1] = w[j2]
                    j2 -= 1
                w[j2 + 1] = key
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
    finally:
        free(w)
    return bl, state
