"""End-to-end analysis reports, the built-in example table and planting/simulation reports.

Every report is a plain dict that serializes deterministically with
:func:`to_json` and validates against ``report_schema.json``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from importlib import metadata, resources
from typing import Callable, Sequence

from . import catalog
from .digraph import Digraph, classify, degrees
from .graphon import clique_graphon, convergence_table, hub_graphon
from .simulate import GENERATOR_NAME, binomial_tail_c2, mc_upper_tail, single_edge_tail
from .variational import (
    SolverConfig,
    assemble_bounds,
    build_f,
    build_fbar,
    build_g,
    profiles_for,
    solve_F,
    solve_G,
    tightness_certificates,
)

__all__ = [
    "RunConfig",
    "ExampleRow",
    "analyze",
    "example_rows",
    "run_examples",
    "plant_verify",
    "simulation_report",
    "load_schema",
    "to_json",
    "tool_version",
]

SCHEMA_VERSION = 1


def tool_version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "0+unknown"


def load_schema() -> dict:
    return json.loads(resources.files("uptail").joinpath("report_schema.json").read_text())


def _clean(obj):
    """Replace non-finite floats (not valid JSON) with strings."""
    if isinstance(obj, float):
        if math.isnan(obj):
            return "nan"
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        return obj
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def to_json(report: dict) -> str:
    return json.dumps(_clean(report), sort_keys=True, indent=2, allow_nan=False) + "\n"


@dataclass(frozen=True)
class RunConfig:
    deltas: tuple[float, ...] = (1.0,)
    tol: float = 1e-9
    grid: int = 1025
    ratio_grid: int = 1025
    core_cap: int = 26
    seed: int = 0
    output: str = "text"

    def solver(self) -> SolverConfig:
        return SolverConfig(tol=self.tol, grid=self.grid, ratio_grid=self.ratio_grid)

    def as_dict(self) -> dict:
        return {"deltas": list(self.deltas), "tol": self.tol, "grid": self.grid,
                "ratio_grid": self.ratio_grid, "core_cap": self.core_cap,
                "seed": self.seed, "output": self.output}


def digraph_summary(D: Digraph) -> dict:
    rec = degrees(D)
    return {"n": D.n, "m": D.m, "max_degree": rec.max_degree,
            "edges": [list(e) for e in D.sorted_edges()], "flags": classify(D).as_dict()}


def analyze(D: Digraph, delta: float, config: RunConfig | None = None) -> dict:
    """Digraph core, profiles, tail polynomials, F, G, verdict: one report."""
    cfg = config or RunConfig(deltas=(delta,))
    if not delta > 0:
        raise ValueError("delta must be positive for bounds")
    profiles = profiles_for(D, cfg.core_cap)
    P_f, P_g, P_fbar = build_f(profiles), build_g(profiles), build_fbar(profiles)
    solver = cfg.solver()
    G_res = solve_G(P_g, delta, cfg.tol, solver)
    F_res = solve_F(P_f, delta, cfg.tol, solver)
    certs = tightness_certificates(profiles, G_res)
    bounds = assemble_bounds(D, delta, F_res, G_res, certs, cfg.tol)
    return {
        "kind": "bounds",
        "schema_version": SCHEMA_VERSION,
        "tool_version": tool_version(),
        "config": cfg.as_dict(),
        "seed": cfg.seed,
        "digraph": digraph_summary(D),
        "n_sets": len(profiles),
        "profiles": [p.as_dict() for p in profiles],
        "polynomials": {"f": P_f.as_dict(), "g": P_g.as_dict(), "fbar": P_fbar.as_dict()},
        "F": {**F_res.as_dict(), "tol": cfg.tol},
        "G": {**G_res.as_dict(), "tol": cfg.tol},
        "bounds": bounds.as_dict(),
        "warnings": list(bounds.warnings),
    }


# -- built-in examples -----------------------------------------------------------

@dataclass
class ExampleRow:
    name: str
    citation: str
    computed: float
    expected: float
    tolerance: float
    relative: bool = False
    extra: dict = field(default_factory=dict)

    @property
    def diff(self) -> float:
        return abs(self.computed - self.expected)

    @property
    def passed(self) -> bool:
        scale = max(1.0, abs(self.expected)) if self.relative else 1.0
        return self.diff <= self.tolerance * scale

    def as_dict(self) -> dict:
        return {"name": self.name, "citation": self.citation, "computed": self.computed,
                "expected": self.expected, "diff": self.diff, "tolerance": self.tolerance,
                "relative": self.relative, "pass": self.passed, "extra": self.extra}


def _bounds_of(D: Digraph, delta: float, cfg: RunConfig) -> dict:
    return analyze(D, delta, RunConfig(deltas=(delta,), tol=cfg.tol, grid=cfg.grid,
                                       ratio_grid=cfg.ratio_grid, core_cap=cfg.core_cap))


def _triangle_row(label: str, factory: Callable[[], Digraph], delta: float, cfg: RunConfig) -> ExampleRow:
    r = _bounds_of(factory(), delta, cfg)["bounds"]
    expected = min(delta ** (2 / 3), 2 * delta / 3)
    return ExampleRow(f"{label} delta={delta:g}", "§5 Example (triangles): min{δ^{2/3}, (2/3)δ}",
                      r["upper_bound"], expected, 1e-6, True,
                      {"lower_bound": r["lower_bound"], "tightness": r["tightness"]})


def _star_row(label: str, factory, expected_factor: float, delta: float, cfg: RunConfig) -> ExampleRow:
    r = _bounds_of(factory(), delta, cfg)
    return ExampleRow(f"{label} delta={delta:g}", "§5 Example (stars): F = G = δ one-way, 2δ mixed",
                      r["F"]["value"], expected_factor * delta, 1e-8, True,
                      {"G": r["G"]["value"], "tightness": r["bounds"]["tightness"]})


def _cycle_row(k: int, delta: float, cfg: RunConfig) -> ExampleRow:
    r = _bounds_of(catalog.directed_cycle(k), delta, cfg)
    b = r["bounds"]
    certified = 1.0 if b["tightness"] == "TIGHT_CERTIFIED" else 0.0
    return ExampleRow(f"cycle-{k} delta={delta:g} certified", "§5 Example (balanced digraphs): F = G",
                      certified, 1.0, 0.0, False,
                      {"F": r["F"]["value"], "G": r["G"]["value"], "argmin": r["G"]["argmin"]})


def example_rows() -> list[tuple[str, Callable[[RunConfig], list[ExampleRow]]]]:
    """Named generators of example rows; each returns one or more rows."""

    def triangles(cfg):
        return [_triangle_row("triangle-transitive", catalog.triangle_transitive, 1.0, cfg),
                _triangle_row("triangle-cyclic", catalog.triangle_cyclic, 8.0, cfg)]

    def stars(cfg):
        return [_star_row("out-star", catalog.out_star, 1.0, 5.0, cfg),
                _star_row("in-star", catalog.in_star, 1.0, 5.0, cfg),
                _star_row("mixed-star", catalog.mixed_star, 2.0, 5.0, cfg)]

    def balanced(cfg):
        return [_cycle_row(k, 2.0, cfg) for k in (2, 3, 4)]

    def hub(cfg):
        r = _bounds_of(catalog.hub_example(3), 100.0, cfg)
        x1, x2, y1, y2 = r["G"]["argmin"]
        y = y1 if y1 < y2 else y2
        return [
            ExampleRow("k=3 star-construction delta=100, y1", "§5 Example (y₁ ∉ {0,1}): y₁ ≈ 0.691",
                       y, 0.691, 0.005, False,
                       {"F": r["F"]["value"], "G": r["G"]["value"], "argmin": [x1, x2, y1, y2]}),
            ExampleRow("k=3 star-construction delta=100, F-G", "§5 Example (y₁ ∉ {0,1}): F = G",
                       r["F"]["value"] - r["G"]["value"], 0.0, 10 * cfg.tol, True),
        ]

    def gap(cfg):
        r = _bounds_of(catalog.gap_example(5), 10000.0, cfg)
        cite = "§5 Example (F ≠ G): F(H,δ) ≈ 7.283, G(H,δ) ≈ 7.031"
        return [
            ExampleRow("k=5 gap delta=10000, F", cite, r["F"]["value"], 7.283, 0.005),
            ExampleRow("k=5 gap delta=10000, G", cite, r["G"]["value"], 7.031, 0.005,
                       extra={"tightness": r["bounds"]["tightness"]}),
        ]

    return [("triangles", triangles), ("stars", stars), ("balanced", balanced),
            ("hub", hub), ("gap", gap)]


def run_examples(config: RunConfig | None = None) -> dict:
    cfg = config or RunConfig()
    rows = []
    for _, gen in example_rows():
        rows.extend(gen(cfg))
    return {
        "kind": "examples",
        "schema_version": SCHEMA_VERSION,
        "tool_version": tool_version(),
        "config": cfg.as_dict(),
        "seed": cfg.seed,
        "rows": [r.as_dict() for r in rows],
        "all_pass": all(r.passed for r in rows),
    }


# -- planting ------------------------------------------------------------------

def plant_verify(D: Digraph, delta: float, ps: Sequence[float], config: RunConfig | None = None) -> dict:
    """Convergence rows for the hub planting at the F minimizer and, for regular H, the clique."""
    cfg = config or RunConfig(deltas=(delta,))
    profiles = profiles_for(D, cfg.core_cap)
    F_res = solve_F(build_f(profiles), delta, cfg.tol, cfg.solver())
    rec = degrees(D)
    x1, x2, y1, y2 = F_res.argmin
    rows = [{"construction": "hub", **row} for row in convergence_table(
        D, lambda p: hub_graphon(x1, x2, y1, y2, p, rec.max_degree), ps, F_res.value, rec.max_degree)]
    if classify(D).regular:
        clique_target = delta ** (2.0 / D.n)
        rows += [{"construction": "clique", **row} for row in convergence_table(
            D, lambda p: clique_graphon(delta, p, D.n, rec.max_degree), ps, clique_target,
            rec.max_degree)]
    return {
        "kind": "plant-verify",
        "schema_version": SCHEMA_VERSION,
        "tool_version": tool_version(),
        "config": cfg.as_dict(),
        "seed": None,
        "generator": None,
        "delta": delta,
        "F": {**F_res.as_dict(), "tol": cfg.tol},
        "rows": rows,
    }


def plant_csv(report: dict) -> str:
    lines = ["construction,p,t_ratio,mass_ratio,mass_target,error"]
    for r in report["rows"]:
        fmt = lambda v: "" if v is None else repr(float(v))
        lines.append(",".join([r["construction"], repr(float(r["p"])), fmt(r["t_ratio"]),
                               fmt(r["mass_ratio"]), fmt(r["mass_target"]) if r.get("mass_target") is not None else "",
                               (r["error"] or "").replace(",", ";")]))
    return "\n".join(lines) + "\n"


# -- simulation ----------------------------------------------------------------

def simulation_report(D: Digraph, n: int, p: float, delta: float, samples: int, seed: int) -> dict:
    if not delta > -1:
        raise ValueError("delta must exceed -1 for tail estimates")
    est = mc_upper_tail(D, n, p, delta, samples, seed)
    out = {
        "kind": "simulate",
        "schema_version": SCHEMA_VERSION,
        "tool_version": tool_version(),
        "config": {"n": n, "p": p, "delta": delta, "samples": samples},
        "seed": seed,
        "generator": GENERATOR_NAME,
        "digraph": digraph_summary(D),
        "monte_carlo": est.as_dict(),
        "exact": None,
    }
    flags = classify(D)
    if D.n == 2 and D.m == 2:
        exact, formula = binomial_tail_c2(n, p, delta)
        out["exact"] = {"method": "Bin(n(n-1)/2, p^2) tail", "value": exact, "formula": formula,
                        "ratio": exact / formula if formula > 0 else None}
    elif D.m == 1 and D.n == 2 and flags.oriented:
        out["exact"] = {"method": "Bin(n(n-1), p) tail", "value": single_edge_tail(n, p, delta),
                        "formula": None, "ratio": None}
    return out

