"""Command-line front end.

Subcommands: ``bounds``, ``paper-examples``, ``plant-verify`` and ``simulate``.
Reports go to stdout, diagnostics to stderr.

Exit codes: 0 success, 1 an example row failed, 2 bad input (parse
errors, invalid flags), 3 a size cap was exceeded, 4 the solver found
no feasible point.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import catalog
from .digraph import CoreTooLargeError, Digraph, DigraphParseError, degrees, parse_digraph
from .report import (
    RunConfig,
    analyze,
    plant_csv,
    plant_verify,
    run_examples,
    simulation_report,
    to_json,
)
from .simulate import CapExceeded
from .variational import SolverInfeasible

EXIT_OK, EXIT_FAILED, EXIT_PARSE, EXIT_CAP, EXIT_INFEASIBLE = 0, 1, 2, 3, 4

BUILTIN_PREFIX = "builtin:"


class UsageError(ValueError):
    pass


def load_graph(spec: str) -> Digraph:
    """A digraph file path, or ``builtin:NAME`` for one of the catalog graphs."""
    if spec.startswith(BUILTIN_PREFIX):
        name = spec[len(BUILTIN_PREFIX):]
        if name not in catalog.BUILTIN:
            raise UsageError(f"unknown builtin {name!r}; choose from {', '.join(sorted(catalog.BUILTIN))}")
        return catalog.BUILTIN[name]()
    path = Path(spec)
    if not path.is_file():
        raise UsageError(f"no such graph file: {spec}")
    return parse_digraph(path.read_text())


def load_analyzable(spec: str) -> Digraph:
    D = load_graph(spec)
    if degrees(D).max_degree < 1:
        raise UsageError("the digraph has no edges; bounds need max degree >= 1")
    return D


def _fmt(x, tol: float) -> str:
    if x is None:
        return "-"
    digits = max(6, min(17, int(-math.log10(tol)) + 2))
    return f"{x:.{digits}g}"


def _bounds_text(r: dict) -> str:
    b, d = r["bounds"], r["digraph"]
    tol = b["tol"]
    flags = ", ".join(k for k, v in d["flags"].items() if v) or "none"
    lines = [
        f"digraph: n={d['n']} m={d['m']} max_degree={d['max_degree']} flags: {flags}",
        f"independent sets of the max-degree core: {r['n_sets']}",
        f"f_H    = {r['polynomials']['f']['text']}",
        f"g_H    = {r['polynomials']['g']['text']}",
        f"fbar_H = {r['polynomials']['fbar']['text']}",
        f"delta = {b['delta']:g}  (tol {tol:g})",
        f"F = {_fmt(b['F_value'], tol)}  argmin (x1, x2, y1, y2) = "
        + ", ".join(_fmt(v, tol) for v in r["F"]["argmin"]),
        f"G = {_fmt(b['G_value'], tol)}  argmin (x1, x2, y1, y2) = "
        + ", ".join(_fmt(v, tol) for v in r["G"]["argmin"]),
        f"clique branch = {_fmt(b['clique_branch'], tol)}",
        f"upper bound = {_fmt(b['upper_bound'], tol)}",
        f"lower bound = {_fmt(b['lower_bound'], tol)}",
        f"verdict: {b['tightness']}",
    ]
    lines += [f"certificate {c}" for c in b["certificates"]]
    lines += [f"warning: {w}" for w in r["warnings"]]
    return "\n".join(lines) + "\n"


def _examples_text(r: dict) -> str:
    lines = []
    for row in r["rows"]:
        status = "PASS" if row["pass"] else "FAIL"
        lines.append(f"{status}  {row['name']}: computed {row['computed']:.10g}, expected "
                     f"{row['expected']:.10g}, |diff| {row['diff']:.3g} (tol {row['tolerance']:g})"
                     f"  [{row['citation']}]")
    return "\n".join(lines) + "\n"


def _simulate_text(r: dict) -> str:
    mc = r["monte_carlo"]
    c = r["config"]
    lines = [f"n={c['n']} p={c['p']:g} delta={c['delta']:g} samples={c['samples']} "
             f"seed={r['seed']} generator={r['generator']}"]
    if mc["one_sided"]:
        lines.append(f"monte carlo: no hits; -log P >= {mc['estimate']:.6g} (95% Wilson)")
    else:
        lo, hi = mc["interval"]
        lines.append(f"monte carlo: -log P = {mc['estimate']:.6g}  95% interval [{lo:.6g}, {hi:.6g}]"
                     f"  hits {mc['hits']}")
    ex = r["exact"]
    if ex is not None:
        lines.append(f"exact ({ex['method']}): {ex['value']:.10g}")
        if ex["formula"] is not None:
            lines.append(f"asymptotic formula: {ex['formula']:.10g}")
        if ex["ratio"] is not None:
            lines.append(f"ratio exact/formula: {ex['ratio']:.10g}")
    return "\n".join(lines) + "\n"


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="uptail", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def solver_flags(p):
        p.add_argument("--tol", type=float, default=1e-9)
        p.add_argument("--grid", type=int, default=1025, help="grid points along the free y coordinate")
        p.add_argument("--ratio-grid", type=int, default=1025, help="grid points along the x ratio")
        p.add_argument("--core-cap", type=int, default=26, help="max size of the max-degree core")

    p = sub.add_parser("bounds", help="F, G, clique branch and verdict for one digraph")
    p.add_argument("--graph", required=True, help="edge-list file or builtin:NAME")
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--json", action="store_true")
    solver_flags(p)

    p = sub.add_parser("paper-examples", help="reproduce the known worked examples")
    p.add_argument("--json", action="store_true")
    solver_flags(p)

    p = sub.add_parser("plant-verify", help="convergence table for the planted constructions")
    p.add_argument("--graph", required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--p-list", type=float, nargs="+", default=[1e-2, 1e-3, 1e-4])
    p.add_argument("--json", action="store_true")
    solver_flags(p)

    p = sub.add_parser("simulate", help="Monte Carlo upper-tail estimate")
    p.add_argument("--graph", required=True)
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--json", action="store_true")
    return parser


def _config(args, deltas=()) -> RunConfig:
    return RunConfig(deltas=tuple(deltas), tol=args.tol, grid=args.grid, ratio_grid=args.ratio_grid,
                     core_cap=args.core_cap, output="json" if args.json else "text")


def _run(args) -> int:
    out = sys.stdout
    if args.command == "bounds":
        if not args.delta > 0:
            raise UsageError("bounds need delta > 0")
        r = analyze(load_analyzable(args.graph), args.delta, _config(args, [args.delta]))
        for w in r["warnings"]:
            print(f"warning: {w}", file=sys.stderr)
        out.write(to_json(r) if args.json else _bounds_text(r))
        return EXIT_OK
    if args.command == "paper-examples":
        r = run_examples(_config(args))
        out.write(to_json(r) if args.json else _examples_text(r))
        return EXIT_OK if r["all_pass"] else EXIT_FAILED
    if args.command == "plant-verify":
        if not args.delta > 0:
            raise UsageError("plant-verify needs delta > 0")
        if any(not 0 < p < 1 for p in args.p_list):
            raise UsageError("every p must lie in (0, 1)")
        r = plant_verify(load_analyzable(args.graph), args.delta, args.p_list, _config(args, [args.delta]))
        for row in r["rows"]:
            if row["error"]:
                print(f"warning: {row['construction']} p={row['p']:g}: {row['error']}", file=sys.stderr)
        out.write(to_json(r) if args.json else plant_csv(r))
        return EXIT_OK
    if args.command == "simulate":
        if args.samples < 1:
            raise UsageError("samples must be at least 1")
        if not 0 <= args.p <= 1:
            raise UsageError("p must lie in [0, 1]")
        if not args.delta > -1:
            raise UsageError("tail estimates need delta > -1")
        r = simulation_report(load_graph(args.graph), args.n, args.p, args.delta,
                              args.samples, args.seed)
        out.write(to_json(r) if args.json else _simulate_text(r))
        return EXIT_OK
    raise UsageError(f"unknown command {args.command}")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except (DigraphParseError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (CoreTooLargeError, CapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except SolverInfeasible as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())
