"""Command-line front end: graph ingestion, subcommand dispatch, reporting.

Every subcommand reads one graph (edge list or DIMACS, auto-detected),
runs the corresponding library stage, and emits one report with a fixed
top-level shape: command, input, n, m, result, certificates, warnings,
timing_ms.  JSON output is byte-identical across runs for identical
inputs, flags, and seed: key order is fixed by construction, floats are
rounded to 12 significant digits, and timing is reported as 0.0 unless
explicitly requested.

Exit codes: 0 success, 2 input error, 3 solver non-convergence (the
report is still written).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from math import log2

from .errors import GraphError, SizeGuardError
from .graph import Graph, parse_graph, power
from .matching import (
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
    tau_bruteforce,
    theta_search,
)
from .pipeline import split
from .solver import DEFAULT_MAX_ITER, DEFAULT_TOL, solve_balanced

_SOLVER_COMMANDS = ("capacity", "split", "bounds", "verify")


def _round_floats(obj):
    """12 significant digits on every float, recursively."""
    if isinstance(obj, float):
        return float(format(obj, ".12g"))
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    return obj


def _load_graph(path: str) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read())


def _solution_dict(sol) -> dict:
    return {
        "theta": sol.theta,
        "P": list(sol.dist.probs),
        "stable_set": list(sol.stable_set),
        "tight_edges": [list(e) for e in sol.tight_edges],
        "component_levels": [
            {"vertices": list(c.vertices), "q": c.q, "p": c.p}
            for c in sol.component_levels
        ],
        "iterations": sol.iterations,
        "converged": sol.converged,
    }


def _certificates(report) -> dict:
    if report is None:
        return {}
    return {
        name: {"passed": c.passed, "detail": c.detail}
        for name, c in sorted(report.checks.items())
    }


def _cmd_capacity(G: Graph, args) -> tuple[dict, dict, list, int]:
    sol = solve_balanced(G, tol=args.tol, seed=args.seed, max_iter=args.max_iter)
    warnings = [] if sol.converged else ["solver did not converge"]
    code = 0 if sol.converged else 3
    return _solution_dict(sol), _certificates(sol.report), warnings, code


def _cmd_split(G: Graph, args) -> tuple[dict, dict, list, int]:
    dec = split(G, tol=args.tol, seed=args.seed, max_iter=args.max_iter, oracle=args.oracle)
    result = dec.to_dict()
    result["theta"] = dec.solution.theta
    warnings = list(dec.anomalies)
    code = 0 if dec.converged else 3
    return result, _certificates(dec.solution.report), warnings, code


def _cmd_bounds(G: Graph, args) -> tuple[dict, dict, list, int]:
    dec = split(G, tol=args.tol, seed=args.seed, max_iter=args.max_iter)
    result = {
        "lower": dec.lower,
        "upper": dec.upper,
        "exact_by_nu": dec.exact_by_nu,
        "nu_F": dec.nu_F,
        "X": list(dec.X),
        "f_vertices": list(dec.f_vertices),
    }
    warnings = list(dec.anomalies)
    code = 0 if dec.converged else 3
    return result, _certificates(dec.solution.report), warnings, code


def _cmd_verify(G: Graph, args) -> tuple[dict, dict, list, int]:
    sol = solve_balanced(G, tol=args.tol, seed=args.seed, max_iter=args.max_iter)
    rep = sol.report
    result = {
        "theta": sol.theta,
        "stable_set": list(sol.stable_set),
        "converged": sol.converged,
    }
    if rep is not None:
        result["m_set"] = list(rep.m_set)
        result["e_set"] = list(rep.e_set)
        result["tight_edges"] = [list(e) for e in rep.tight_edges]
        result["precedence"] = [list(p) for p in rep.precedence]
        result["expansion_sampled"] = rep.expansion_sampled
        result["all_passed"] = rep.all_passed()
    warnings = [] if sol.converged else ["solver did not converge"]
    if rep is None:
        warnings.append("no certificate report for the returned point")
    code = 0 if sol.converged else 3
    return result, _certificates(rep), warnings, code


def _cmd_cover(G: Graph, args) -> tuple[dict, dict, list, int]:
    value, y = min_fractional_cover(G)
    optimal, unique = uniform_cover_status(G)
    result = {
        "value": value,
        "cover": list(y.weights),
        "is_basic": is_basic_2cover(G, y, convention=args.convention),
        "uniform_optimal": optimal,
        "uniform_unique": unique,
    }
    return result, {}, [], 0


def _cmd_matching(G: Graph, args) -> tuple[dict, dict, list, int]:
    nu, edges = max_matching(G)
    value, w = max_2matching(G)
    ok, payload = has_perfect_2matching(G)
    result = {
        "nu": nu,
        "matching": [list(e) for e in edges],
        "two_matching_value": value,
        "two_matching_weights": list(w.weights),
        "has_perfect_2matching": ok,
    }
    if ok:
        result["certificate"] = {
            "cycles": [list(c) for c in payload.cycles],
            "matched_edges": [list(e) for e in payload.matched_edges],
            "covered": payload.covered,
        }
    else:
        result["violator"] = list(payload)
    return result, {}, [], 0


def _cmd_power(G: Graph, args) -> tuple[dict, dict, list, int]:
    H = power(G, args.t)
    result = {"t": args.t, "power_n": H.n, "power_m": H.m}
    warnings = []
    try:
        w = omega_bruteforce(H)
        result["omega"] = w
        result["capacity_lower"] = log2(w) / args.t
    except SizeGuardError as exc:
        warnings.append(f"omega skipped: {exc}")
    return result, {}, warnings, 0


def _cmd_oracle(G: Graph, args) -> tuple[dict, dict, list, int]:
    result: dict = {}
    warnings = []
    try:
        alpha, witness = alpha_bruteforce(G)
        result["alpha"] = alpha
        result["alpha_witness"] = list(witness)
        result["tau"] = tau_bruteforce(G)
    except SizeGuardError as exc:
        warnings.append(f"alpha/tau skipped: {exc}")
    try:
        result["omega"] = omega_bruteforce(G)
    except SizeGuardError as exc:
        warnings.append(f"omega skipped: {exc}")
    try:
        result["theta_search"] = theta_search(G, seed=args.seed)
    except SizeGuardError as exc:
        warnings.append(f"theta_search skipped: {exc}")
    try:
        result["perfect_2matching"] = perfect_2matching_oracle(G)
    except SizeGuardError as exc:
        warnings.append(f"perfect_2matching skipped: {exc}")
    return result, {}, warnings, 0


_HANDLERS = {
    "capacity": _cmd_capacity,
    "split": _cmd_split,
    "bounds": _cmd_bounds,
    "cover": _cmd_cover,
    "matching": _cmd_matching,
    "power": _cmd_power,
    "verify": _cmd_verify,
    "oracle": _cmd_oracle,
}


def _render_text(report: dict, out) -> None:
    def emit(key, val, indent=0):
        pad = "  " * indent
        if isinstance(val, dict):
            print(f"{pad}{key}:", file=out)
            for k, v in val.items():
                emit(k, v, indent + 1)
        elif isinstance(val, list) and val and isinstance(val[0], (dict, list)):
            print(f"{pad}{key}:", file=out)
            for i, v in enumerate(val):
                emit(str(i), v, indent + 1)
        else:
            print(f"{pad}{key}: {val}", file=out)

    for key, val in report.items():
        emit(key, val)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conjcap",
        description="Conjunctive capacity, balanced distributions, and stability splits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _HANDLERS:
        p = sub.add_parser(name)
        p.add_argument("--input", required=True, help="graph file (edge list or DIMACS)")
        p.add_argument("--tol", type=float, default=DEFAULT_TOL)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER)
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--timing", action="store_true", help="report real elapsed time")
        if name == "cover":
            p.add_argument(
                "--convention", choices=("paper-literal", "half-set"), default="half-set"
            )
        if name == "power":
            p.add_argument("--t", type=int, default=2, help="conjunctive power exponent")
        if name == "split":
            p.add_argument("--oracle", action="store_true", help="brute-force alpha check")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    try:
        G = _load_graph(args.input)
    except (OSError, GraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        result, certificates, warnings, code = _HANDLERS[args.command](G, args)
    except (GraphError, SizeGuardError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    elapsed_ms = (time.perf_counter() - started) * 1000.0
    report = {
        "command": args.command,
        "input": args.input,
        "n": G.n,
        "m": G.m,
        "result": result,
        "certificates": certificates,
        "warnings": warnings,
        "timing_ms": elapsed_ms if args.timing else 0.0,
    }
    report = _round_floats(report)
    if args.format == "json":
        print(json.dumps(report, indent=2))
    else:
        _render_text(report, sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
