"""Command-line front end.

    steiner-extension solve sse inst.gr --k 3 --p 2 --json
    steiner-extension check inst.gr --p 2
    steiner-extension gen cycle --n 5 --out c5.gr
    steiner-extension verify inst.gr sol.txt --problem sse --k 3 --p 2
    steiner-extension oracle pvc inst.gr --k 1 --p 1 --eta 3
    steiner-extension acceptance --only 4

Exit codes: 0 yes (feasible, valid), 1 no (infeasible, invalid), 2 error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import deletion
from .connectivity import feasible_superset
from .generators import KINDS, generate
from .graph import GraphError, ordering_from_cutwidth_layout, ordering_from_tree_decomposition
from .instance_io import (
    Instance,
    InstanceFormatError,
    parse_instance,
    parse_layout,
    parse_solution,
    parse_tree_decomposition,
    write_instance,
)
from .linalg import PrimeField
from .obstructions import corollary3_families, is_path_graph
from .sse import SseError, solve_extension

PROBLEMS = ("sse", "bdds", "pw1ds", "tdds", "pvc", "scattered")
NEEDS = {
    "sse": ("k", "p"),
    "bdds": ("k", "p", "eta"),
    "pw1ds": ("k", "p"),
    "tdds": ("k", "p", "eta"),
    "pvc": ("k", "p", "eta"),
    "scattered": ("k", "p", "alpha", "beta"),
}


class UsageError(ValueError):
    pass


def _emit(report: dict, args) -> None:
    if getattr(args, "json", False):
        text = json.dumps(report, sort_keys=True, separators=(",", ":"))
    else:
        lines = [f"status: {report['status']}"]
        if report.get("solution") is not None:
            lines.append("solution: " + " ".join(str(v) for v in report["solution"]))
        for key in ("message", "violation", "witness_size"):
            if key in report:
                lines.append(f"{key}: {report[key]}")
        if "wall_time_ms" in report:
            lines.append(f"wall_time_ms: {report['wall_time_ms']}")
        text = "\n".join(lines)
    out = getattr(args, "out", None)
    if out and report.get("status") != "error" and getattr(args, "command", "") != "gen":
        Path(out).write_text(text + "\n")
    print(text)


def _load(path: str) -> Instance:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_instance(text)


def _params(problem: str, inst: Instance, args) -> dict:
    """Flag values override the instance's own ``x`` lines."""
    merged = dict(inst.extras)
    if inst.k is not None:
        merged["k"] = inst.k
    if inst.p is not None:
        merged["p"] = inst.p
    for key in ("k", "p", "eta", "alpha", "beta", "lambda"):
        val = getattr(args, key, None)
        if val is not None:
            merged[key] = val
    missing = [key for key in NEEDS[problem] if key not in merged]
    if missing:
        raise UsageError(f"{problem} needs " + ", ".join(f"--{m}" for m in missing))
    if merged["p"] < 1:
        raise UsageError("p must be at least 1")
    if merged["k"] < 0:
        raise UsageError("k must be nonnegative")
    return {key: merged[key] for key in sorted(merged) if key in NEEDS[problem] or key == "lambda"}


def _ordering(inst: Instance, args):
    if getattr(args, "td", None):
        td = parse_tree_decomposition(Path(args.td).read_text())
        return ordering_from_tree_decomposition(inst.graph, td)
    if getattr(args, "layout", None):
        layout = parse_layout(Path(args.layout).read_text())
        return ordering_from_cutwidth_layout(inst.graph, layout)
    return None


def run_problem(problem: str, inst: Instance, params: dict, seed: int, strict: bool, field=None, ordering=None, arc_cap=None):
    g, k, p = inst.graph, params["k"], params["p"]
    kw = dict(seed=seed, strict=strict, field=field)
    if problem == "sse":
        extra = {"arc_cap": arc_cap} if arc_cap else {}
        return solve_extension(g, inst.terminals, k, p, ordering=ordering, **kw, **extra)
    if problem == "bdds":
        return deletion.solve_bdds(g, k, p, params["eta"], **kw)
    if problem == "pw1ds":
        return deletion.solve_pw1ds(g, k, p, **kw)
    if problem == "tdds":
        return deletion.solve_tdds(g, k, p, params["eta"], **kw)
    if problem == "pvc":
        return deletion.solve_pvc(g, k, p, params["eta"], **kw)
    if problem == "scattered":
        return deletion.solve_scattered(g, k, p, lam=params.get("lambda"), alpha=params["alpha"], beta=params["beta"], **kw)
    raise UsageError(f"unknown problem {problem!r}")


def _report(status: str, solution, start: float, seed: int, params: dict, **extra) -> dict:
    rep = {
        "status": status,
        "wall_time_ms": int(round((time.perf_counter() - start) * 1000)),
        "seed": seed,
        "params": params,
    }
    # a solution is reported only with a yes
    if solution is not None:
        rep["solution"] = sorted(v + 1 for v in solution)
    rep.update(extra)
    return rep


def cmd_solve(args) -> int:
    start = time.perf_counter()
    inst = _load(args.instance)
    params = _params(args.problem, inst, args)
    params["strict_singleton"] = bool(args.strict_singleton)
    field = PrimeField(args.field_prime) if args.field_prime else None
    if args.problem == "sse":
        params["terminals"] = sorted(v + 1 for v in inst.terminals)
    res = run_problem(
        args.problem, inst, params, args.seed, args.strict_singleton, field, _ordering(inst, args), args.cap_arcs
    )
    _emit(_report(res.status, res.solution if res.yes else None, start, args.seed, params), args)
    return 0 if res.yes else 1


def cmd_check(args) -> int:
    start = time.perf_counter()
    inst = _load(args.instance)
    p = args.p if args.p is not None else inst.p
    if p is None:
        raise UsageError("check needs --p")
    g = inst.graph
    if not g.is_connected():
        raise UsageError("check requires a connected graph")
    region = feasible_superset(g, inst.terminals, p, strict=args.strict_singleton)
    params = {"p": p, "terminals": sorted(v + 1 for v in inst.terminals)}
    if region is None:
        _emit(_report("infeasible", None, start, 0, params), args)
        return 1
    _emit(_report("yes", region, start, 0, params, witness_size=len(region)), args)
    return 0


def cmd_gen(args) -> int:
    params = {key: getattr(args, key) for key in ("n", "eta", "hairs", "hair_every", "density") if getattr(args, key) is not None}
    try:
        g = generate(args.kind, params, args.seed)
    except GraphError as exc:
        raise UsageError(str(exc)) from None
    terminals = frozenset(v - 1 for v in args.terminals) if args.terminals else frozenset()
    extras = {key: getattr(args, key) for key in ("alpha", "beta", "lambda") if getattr(args, key) is not None}
    if args.kind == "random_degenerate":
        extras.pop("eta", None)
    inst = Instance(g, terminals, args.k, args.p, extras)
    text = write_instance(inst, comment=f"generated: {args.kind} {json.dumps(params, sort_keys=True)} seed={args.seed}")
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def verify_solution(problem: str, inst: Instance, solution, params: dict, strict: bool) -> str | None:
    """Name of the first violated condition, or None. Uses the oracle checkers only."""
    from . import oracle

    g = inst.graph
    s = frozenset(solution)
    if any(not 0 <= v < g.n for v in s):
        return "vertex out of range"
    if len(s) > params["k"]:
        return "size exceeds k"
    if problem == "sse":
        if not inst.terminals <= s:
            return "terminal not covered"
        if not oracle.oracle_edge_connected(g, s, params["p"], strict):
            return "connectivity"
        return None
    if s and not oracle.oracle_edge_connected(g, s, params["p"], strict):
        return "connectivity"
    rest, _ = g.remove(s)
    extras = dict(params)
    if problem == "scattered" and params.get("lambda") is not None:
        f1, f2 = corollary3_families(params["alpha"], params["beta"])
        if not any(is_path_graph(h, params["lambda"]) for h in f1 + f2):
            return "lambda"
    names = {"bdds": "max degree", "pw1ds": "pathwidth", "tdds": "treedepth", "pvc": "path", "scattered": "component class"}
    if not oracle.residual_ok(problem, rest, extras):
        return names[problem]
    return None


def cmd_verify(args) -> int:
    start = time.perf_counter()
    inst = _load(args.instance)
    params = _params(args.problem, inst, args)
    try:
        sol = parse_solution(Path(args.solution).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {args.solution}: {exc.strerror}") from None
    bad = verify_solution(args.problem, inst, sol, params, args.strict_singleton)
    if bad is None:
        _emit(_report("yes", sol, start, args.seed, params), args)
        return 0
    _emit(_report("no", None, start, args.seed, params, violation=bad), args)
    return 1


def cmd_oracle(args) -> int:
    from . import oracle

    start = time.perf_counter()
    inst = _load(args.instance)
    params = _params(args.problem, inst, args)
    if args.problem == "sse":
        res = oracle.brute_solve_sse(inst.graph, inst.terminals, params["k"], params["p"], args.strict_singleton)
    else:
        res = oracle.brute_deletion(args.problem, inst.graph, params["k"], params["p"], params, args.strict_singleton)
    _emit(_report(res.status, res.solution if res.yes else None, start, args.seed, params), args)
    return 0 if res.yes else 1


def cmd_acceptance(args) -> int:
    from .acceptance import CRITERIA, dumps, run_criterion

    chosen = [c for c in CRITERIA if args.only is None or c.number in args.only]
    ok = True
    for crit in chosen:
        result = run_criterion(crit)
        print(result.line(), flush=True)
        ok &= result.passed
        if args.reports and crit.number != 8:
            folder = Path(args.reports)
            folder.mkdir(parents=True, exist_ok=True)
            for label, rep in result.reports.items():
                (folder / f"{label}.json").write_text(dumps(rep) + "\n")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="steiner-extension", description=__doc__.split("\n\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, with_problem_flags=True):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--strict-singleton", action="store_true", help="single vertices are never p-edge-connected")
        p.add_argument("--json", action="store_true", help="single-line JSON report")
        p.add_argument("--out", help="also write the report to this file")
        if with_problem_flags:
            for flag in ("k", "p", "eta", "alpha", "beta"):
                p.add_argument(f"--{flag}", type=int)
            p.add_argument("--lambda", dest="lambda", type=int)

    p = sub.add_parser("solve", help="solve one instance")
    p.add_argument("problem", choices=PROBLEMS)
    p.add_argument("instance")
    common(p)
    p.add_argument("--field-prime", type=int, help="override the field prime")
    p.add_argument("--td", help="tree decomposition file; its pre-order gives the vertex ordering (sse)")
    p.add_argument("--layout", help="cutwidth layout file used as the vertex ordering (sse)")
    p.add_argument("--cap-arcs", type=int, help="maximum arcs considered at one vertex (default 14)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("check", help="is there any p-edge-connected superset of the terminals?")
    p.add_argument("instance")
    p.add_argument("--p", type=int)
    p.add_argument("--strict-singleton", action="store_true")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("gen", help="write a generated instance")
    p.add_argument("kind", choices=KINDS)
    p.add_argument("--n", type=int)
    p.add_argument("--eta", type=int)
    p.add_argument("--hairs", type=int)
    p.add_argument("--hair-every", dest="hair_every", type=int)
    p.add_argument("--density", type=float)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--terminals", type=int, nargs="*", help="1-based terminal ids")
    p.add_argument("--k", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--alpha", type=int)
    p.add_argument("--beta", type=int)
    p.add_argument("--lambda", dest="lambda", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="re-check a solution file")
    p.add_argument("instance")
    p.add_argument("solution")
    p.add_argument("--problem", choices=PROBLEMS, default="sse")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="brute-force answer for small instances")
    p.add_argument("problem", choices=PROBLEMS)
    p.add_argument("instance")
    common(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("acceptance", help="run the acceptance criteria")
    p.add_argument("--only", type=int, nargs="*", help="criterion numbers to run (default all)")
    p.add_argument("--reports", help="directory for one JSON report per suite")
    p.set_defaults(func=cmd_acceptance)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (InstanceFormatError, GraphError, SseError, UsageError, ValueError) as exc:
        report = {"status": "error", "message": str(exc)}
        if getattr(args, "json", False):
            print(json.dumps(report, sort_keys=True, separators=(",", ":")))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
