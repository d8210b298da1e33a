"""Compare the compiled and pure ascent kernels on identical workloads.

Both backends must produce bitwise-identical trajectories: same best
objective value, same best point, same generator state.  This script
asserts that on every workload while timing the raw ascent loop, so the
reported speedup is an apples-to-apples measurement of the same float
sequence.

Run:  python3 benchmarks/bench_backends.py
"""

from __future__ import annotations

import time
from array import array

from conjcap import _kernels_py
from conjcap.graph import Graph
from conjcap.oracles import random_graph_corpus

try:
    from conjcap import _kernels_c
except ImportError:
    _kernels_c = None

ITERS = 20_000
C_SEED = 0x9E3779B97F4A7C15
FLOOR = 1e-12


def workload(G: Graph):
    eu = array("i", [u for u, _ in G.edges])
    ev = array("i", [v for _, v in G.edges])
    p0 = [1.0 / G.n] * G.n
    return eu, ev, p0


def run(kern, G: Graph):
    eu, ev, p0 = workload(G)
    p = array("d", p0)
    best_p = array("d", p0)
    started = time.perf_counter()
    best_l, rng_state = kern.ascent_chunk(
        p, best_p, eu, ev, ITERS, 1.0 / G.n, 0, C_SEED, float("-inf"), FLOOR
    )
    elapsed = time.perf_counter() - started
    return elapsed, best_l, tuple(best_p), rng_state


def main() -> int:
    graphs = [
        ("chair n=5", Graph(5, ((0, 1), (0, 2), (0, 3), (3, 4)))),
        ("cycle n=11", Graph(11, tuple((i, (i + 1) % 11) for i in range(11)))),
    ]
    for name, G in random_graph_corpus(4, 14, 20, seed=99):
        graphs.append((name, G))

    if _kernels_c is None:
        print("compiled backend unavailable; timing pure backend only")
    print(f"{'graph':<22} {'pure (s)':>10} {'compiled (s)':>13} {'speedup':>8}")
    for name, G in graphs:
        t_py, l_py, bp_py, st_py = run(_kernels_py, G)
        if _kernels_c is None:
            print(f"{name:<22} {t_py:>10.4f} {'-':>13} {'-':>8}")
            continue
        t_c, l_c, bp_c, st_c = run(_kernels_c, G)
        assert l_py == l_c, f"{name}: best_l differs {l_py!r} vs {l_c!r}"
        assert bp_py == bp_c, f"{name}: best point differs"
        assert st_py == st_c, f"{name}: rng state differs"
        print(f"{name:<22} {t_py:>10.4f} {t_c:>13.4f} {t_py / t_c:>7.1f}x")
    if _kernels_c is not None:
        print("all workloads bitwise identical across backends")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
