"""Tail polynomials of a digraph and the constrained minimizations F and G.

Both problems minimize ``x1*y1 + x2*y2`` on a level set ``P = 1 + delta``
with ``y`` in the unit square. The minimum sits on ``max(y1, y2) = 1``, so
each solver scans the two boundary families ``{y2 = 1}`` and ``{y1 = 1}``.
For a fixed direction of ``(x1, x2)`` the level equation has a unique
positive root (``P`` is increasing and convex along rays from the origin),
which turns every candidate into a point on a low-dimensional grid.

G reduces to ``x1 == x2`` (one free coordinate per family). F does not,
so it searches the ratio ``t = min(x1, x2) / max(x1, x2)`` separately on
the closed regions ``x1 <= x2`` and ``x2 <= x1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Sequence

import numpy as np

from .digraph import Digraph, SetProfile, classify, degrees, independent_sets, set_profile
from .matching import fill_bounds
from .polynomial import TailPolynomial

__all__ = [
    "VariationalResult",
    "BoundsReport",
    "Tightness",
    "SolverConfig",
    "SolverInfeasible",
    "profiles_for",
    "build_f",
    "build_g",
    "build_fbar",
    "evaluate",
    "solve_level_x",
    "solve_G",
    "solve_F",
    "assemble_bounds",
    "tightness_certificates",
    "closed_form",
    "golden_section",
]

FAMILIES = ("y2=1", "y1=1")
REGIONS = ("x2<=x1", "x1<=x2")
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


class SolverInfeasible(RuntimeError):
    """The level set ``P = 1 + delta`` is empty on every searched family."""


class Tightness(str, Enum):
    TIGHT_CERTIFIED = "TIGHT_CERTIFIED"
    TIGHT_NUMERICAL = "TIGHT_NUMERICAL"
    GAP = "GAP"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class SolverConfig:
    tol: float = 1e-9
    level_tol: float = 1e-12
    grid: int = 1025
    ratio_grid: int = 1025
    max_sweeps: int = 60


@dataclass
class VariationalResult:
    value: float
    argmin: tuple[float, float, float, float]
    family: str
    region: str
    tol_achieved: float
    feasible: bool
    level_residual: float = 0.0
    family_values: dict[str, float] = field(default_factory=dict)
    grid: tuple[int, ...] = ()

    @property
    def branch(self) -> str:
        return f"{self.family}, {self.region}"

    def as_dict(self) -> dict:
        return {
            "value": self.value, "argmin": list(self.argmin), "family": self.family,
            "region": self.region, "tol_achieved": self.tol_achieved,
            "feasible": self.feasible, "level_residual": self.level_residual,
            "family_values": self.family_values, "grid": list(self.grid),
        }


@dataclass
class BoundsReport:
    delta: float
    F_value: float
    G_value: float
    clique_branch: float | None
    upper_bound: float
    lower_bound: float
    tightness: Tightness
    certificates: list[str]
    tol: float
    warnings: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "delta": self.delta, "F_value": self.F_value, "G_value": self.G_value,
            "clique_branch": self.clique_branch, "upper_bound": self.upper_bound,
            "lower_bound": self.lower_bound, "tightness": self.tightness.value,
            "certificates": list(self.certificates), "tol": self.tol,
            "warnings": list(self.warnings),
        }


# -- polynomials -------------------------------------------------------------

def profiles_for(D: Digraph, cap: int = 26) -> list[SetProfile]:
    """Profiles of every independent set of the core, with ``a``/``b`` filled."""
    rec = degrees(D)
    profiles = [set_profile(D, S, rec) for S in independent_sets(D, cap)]
    return fill_bounds(D, profiles)


def build_f(profiles: Sequence[SetProfile]) -> TailPolynomial:
    return TailPolynomial.from_exponents(
        ((p.v_plus, p.v_minus, p.v_pm, p.A, p.B, 0) for p in profiles), kind="f")


def build_g(profiles: Sequence[SetProfile]) -> TailPolynomial:
    if any(p.a is None or p.b is None for p in profiles):
        raise ValueError("profiles lack directional bounds; run fill_bounds first")
    return TailPolynomial.from_exponents(
        ((p.v_plus, p.v_minus, p.v_pm, p.a, p.b, 0) for p in profiles), kind="g")


def build_fbar(profiles: Sequence[SetProfile]) -> TailPolynomial:
    return TailPolynomial.from_exponents(
        ((p.v_plus, p.v_minus, p.v_pm, p.n_plus0, p.n_minus0, p.n_pm) for p in profiles),
        kind="fbar")


def evaluate(P: TailPolynomial, x1: float, x2: float, y1: float, y2: float) -> float:
    return P.evaluate(x1, x2, y1, y2)


# -- level-set roots ---------------------------------------------------------

def _horner(coeffs: Sequence[float], x: float) -> tuple[float, float]:
    p = 0.0
    dp = 0.0
    for c in reversed(coeffs):
        dp = dp * x + p
        p = p * x + c
    return p, dp


def _upper_start(coeffs: np.ndarray, target: float) -> np.ndarray:
    """Smallest single-term root; ``coeffs`` has the degree on its first axis.

    Each single term is at most ``P - c0``, so its own root bounds the true root.
    """
    rhs = target - coeffs[0]
    best = np.full(coeffs.shape[1:], np.inf)
    for d in range(1, coeffs.shape[0]):
        c = coeffs[d]
        if not c.any():
            continue
        with np.errstate(divide="ignore", invalid="ignore"):
            cand = rhs / c
            if d == 2:
                np.sqrt(cand, out=cand)
            elif d == 3:
                np.cbrt(cand, out=cand)
            elif d > 3:
                cand **= 1.0 / d
        cand[c <= 0] = np.inf
        np.minimum(best, cand, out=best)
    return best


def _ray_roots(coeffs: np.ndarray, target: float, iters: int = 100) -> np.ndarray:
    """Vectorized root of ``sum_d coeffs[d] s**d = target``; ``inf`` if none.

    ``coeffs`` has the degree on its first axis. Newton from the single-term
    upper bound: along a ray the polynomial is increasing and convex, so the
    iterates decrease monotonically to the root.
    """
    x = _upper_start(coeffs, target)
    dead = ~np.isfinite(x)
    xs = np.where(dead, 0.0, x)
    p = np.empty_like(xs)
    dp = np.empty_like(xs)
    for _ in range(iters):
        p[...] = coeffs[-1]
        dp.fill(0.0)
        for d in range(coeffs.shape[0] - 2, -1, -1):
            dp *= xs
            dp += p
            p *= xs
            p += coeffs[d]
        p -= target
        with np.errstate(divide="ignore", invalid="ignore"):
            np.divide(p, dp, out=p)
        p[~(dp > 0)] = 0.0
        np.maximum(p, 0.0, out=p)
        xs -= p
        if not np.any(p > 1e-15 * xs):
            break
    xs[dead] = np.inf
    return xs


def _root(coeffs: Sequence[float], target: float, level_tol: float) -> float:
    """Scalar root of the ray polynomial: Newton from above, bisection fallback."""
    coeffs = [float(c) for c in coeffs]
    if all(c <= 0 for c in coeffs[1:]):
        return math.inf
    rhs = target - coeffs[0]
    hi = min((rhs / c) ** (1.0 / d) for d, c in enumerate(coeffs) if d and c > 0)
    lo = 0.0
    x = hi
    scale = level_tol * max(1.0, abs(target))
    for _ in range(200):
        p, dp = _horner(coeffs, x)
        if p >= target:
            hi = x
        else:
            lo = x
        if abs(p - target) <= scale:
            return x
        nxt = x - (p - target) / dp if dp > 0 else 0.5 * (lo + hi)
        if not lo < nxt <= hi or nxt == x:
            nxt = 0.5 * (lo + hi)
            if nxt == lo or nxt == hi:
                return hi
        x = nxt
    return hi


def _bisect_level(fn: Callable[[float], float], target: float, level_tol: float) -> float:
    scale = level_tol * max(1.0, abs(target))
    hi = 1.0
    while fn(hi) < target:
        hi *= 2.0
        if hi > 1e300:
            raise SolverInfeasible("level cannot be bracketed")
    lo = 0.0
    for _ in range(400):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        val = fn(mid)
        if abs(val - target) <= scale:
            return mid
        if val < target:
            lo = mid
        else:
            hi = mid
    return hi


def solve_level_x(P: TailPolynomial, y1: float, y2: float, target: float,
                  level_tol: float = 1e-12) -> float:
    """The ``x >= 0`` with ``P(x, x, y1, y2) = target``, by bisection.

    The bracket starts at ``[0, 1]`` and doubles its upper end until the
    level is exceeded.
    """
    if target <= 1:
        raise ValueError("target must exceed 1")
    if min(y1, y2) < 0:
        raise ValueError("y must be nonnegative")
    coeffs = P.ray_coefficients(1.0, 1.0, y1, y2)
    if not np.any(coeffs[1:] > 0):
        raise SolverInfeasible(f"P(x, x, {y1}, {y2}) does not depend on x")
    cs = [float(c) for c in coeffs]
    return _bisect_level(lambda x: _horner(cs, x)[0], target, level_tol)


# -- 1-d search --------------------------------------------------------------

def golden_section(f: Callable[[float], float], a: float, b: float,
                   xtol: float = 1e-10, max_iter: int = 200) -> tuple[float, float]:
    """Minimize ``f`` on ``[a, b]``; endpoints are compared at the end."""
    fa, fb = f(a), f(b)
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if abs(b - a) <= xtol:
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    best = min(((fc, c), (fd, d), (fa, a), (fb, b)))
    return best[1], best[0]


# -- objective plumbing ------------------------------------------------------

def _family_point(family: str, u):
    return (u, 1.0) if family == "y2=1" else (1.0, u)


def _region_rays(region: str, t):
    if region == "x1=x2":
        return (1.0, 1.0)
    return (1.0, t) if region == "x2<=x1" else (t, 1.0)


def _objective_point(P: TailPolynomial, family: str, region: str, u: float, t: float,
                     target: float, level_tol: float):
    y1, y2 = _family_point(family, u)
    r1, r2 = _region_rays(region, t)
    s = _root(P.ray_coefficients_scalar(r1, r2, y1, y2), target, level_tol)
    if not math.isfinite(s):
        return math.inf, None
    x1, x2 = s * r1, s * r2
    return x1 * y1 + x2 * y2, (x1, x2, y1, y2)


def _grid_values(P: TailPolynomial, family: str, region: str, us: np.ndarray,
                 ts: np.ndarray, target: float, block: int = 32) -> np.ndarray:
    """Objective on the product grid ``us x ts`` (free y by ratio).

    Rows go in blocks small enough to stay in cache.
    """
    y1, y2 = np.broadcast_arrays(*np.atleast_1d(*_family_point(family, us)))
    r1, r2 = np.broadcast_arrays(*np.atleast_1d(*_region_rays(region, ts)))
    vals = np.empty((y1.size, r1.size))
    for lo in range(0, y1.size, block):
        b1, b2 = y1[lo:lo + block], y2[lo:lo + block]
        roots = _ray_roots(P.outer_ray_coefficients(r1, r2, b1, b2), target)
        with np.errstate(invalid="ignore"):
            vals[lo:lo + block] = roots * (np.outer(b1, r1) + np.outer(b2, r2))
    vals[np.isnan(vals)] = np.inf
    return vals


def _check_target(delta: float) -> float:
    if not delta > 0:
        raise ValueError("delta must be positive")
    return 1.0 + delta


# -- G -------------------------------------------------------------------------

def solve_G(P_g: TailPolynomial, delta: float, tol: float = 1e-9,
            config: SolverConfig | None = None) -> VariationalResult:
    """Minimize ``x (y1 + y2)`` on ``g(x, x, y1, y2) = 1 + delta``."""
    cfg = config or SolverConfig(tol=tol)
    target = _check_target(delta)
    us = np.linspace(0.0, 1.0, cfg.grid)
    best = None
    family_values = {}
    for family in FAMILIES:
        vals = _grid_values(P_g, family, "x1=x2", us, np.array([1.0]), target)[:, 0]
        if not np.isfinite(vals).any():
            family_values[family] = math.inf
            continue
        i = int(np.argmin(vals))
        lo, hi = us[max(i - 1, 0)], us[min(i + 1, len(us) - 1)]

        def obj(u, family=family):
            return _objective_point(P_g, family, "x1=x2", u, 1.0, target, cfg.level_tol)[0]

        u, val = golden_section(obj, lo, hi, xtol=min(1e-10, cfg.tol))
        if vals[i] < val:
            u, val = us[i], vals[i]
        family_values[family] = float(val)
        if best is None or val < best[0]:
            best = (float(val), family, float(u))
    if best is None:
        raise SolverInfeasible("g has no x-dependent term on either boundary family")
    val, family, u = best
    _, point = _objective_point(P_g, family, "x1=x2", u, 1.0, target, cfg.level_tol)
    tol_achieved = _local_flatness(
        lambda v: _objective_point(P_g, family, "x1=x2", v, 1.0, target, cfg.level_tol)[0], u, val)
    residual = abs(P_g.evaluate(*point) - target)
    return VariationalResult(
        value=val, argmin=point, family=family, region="x1=x2",
        tol_achieved=tol_achieved, feasible=True, level_residual=residual,
        family_values=family_values, grid=(cfg.grid,))


def _local_flatness(f: Callable[[float], float], u: float, val: float, h: float = 1e-7) -> float:
    """How much the objective can still improve within ``h`` of ``u``."""
    gaps = [0.0]
    for v in (u - h, u + h):
        if 0.0 <= v <= 1.0:
            fv = f(v)
            if math.isfinite(fv):
                gaps.append(max(0.0, val - fv))
    return max(gaps) + 4 * np.finfo(float).eps * max(1.0, abs(val))


# -- F -------------------------------------------------------------------------

def _refine_2d(obj: Callable[[float, float], float], u: float, t: float, hu: float,
               ht: float, tol: float, max_sweeps: int) -> tuple[float, float, float]:
    """Coordinate-wise golden section with brackets that shrink on interior moves."""
    val = obj(u, t)
    xtol = min(1e-10, tol)
    for _ in range(max_sweeps):
        start = val
        lo, hi = max(0.0, u - hu), min(1.0, u + hu)
        nu, nv = golden_section(lambda z: obj(z, t), lo, hi, xtol)
        if nv <= val:
            hu = hu if (nu in (lo, hi) and 0.0 < nu < 1.0) else max(2 * abs(nu - u), hu / 4, 1e-9)
            u, val = nu, nv
        lo, hi = max(0.0, t - ht), min(1.0, t + ht)
        nt, nv = golden_section(lambda z: obj(u, z), lo, hi, xtol)
        if nv <= val:
            ht = ht if (nt in (lo, hi) and 0.0 < nt < 1.0) else max(2 * abs(nt - t), ht / 4, 1e-9)
            t, val = nt, nv
        if start - val <= 0.01 * tol and hu <= 1e-6 and ht <= 1e-6:
            break
    return u, t, val


def _shrink_idle_x(P: TailPolynomial, point, target: float, level_tol: float):
    """Lower an ``x_i`` whose ``y_i`` is zero as far as the level allows.

    Such an ``x_i`` does not enter the objective, so the minimizer is not
    unique; the smallest admissible value keeps planted constructions feasible.
    """
    x1, x2, y1, y2 = point
    floor = target - level_tol * max(1.0, target)
    for idx, y in ((1, y2), (0, y1)):
        if y != 0.0:
            continue
        cur = [x1, x2]

        def level(v):
            trial = list(cur)
            trial[idx] = v
            return P.evaluate(trial[0], trial[1], y1, y2)

        if level(0.0) >= floor:
            cur[idx] = 0.0
        else:
            lo, hi = 0.0, cur[idx]
            for _ in range(200):
                mid = 0.5 * (lo + hi)
                if mid in (lo, hi):
                    break
                if level(mid) >= floor:
                    hi = mid
                else:
                    lo = mid
            cur[idx] = hi
        x1, x2 = cur
    return (x1, x2, y1, y2)


def solve_F(P_f: TailPolynomial, delta: float, tol: float = 1e-9,
            config: SolverConfig | None = None) -> VariationalResult:
    """Minimize ``x1 y1 + x2 y2`` on ``f(x1, x2, y1, y2) = 1 + delta``.

    Searches (free y, ratio) on both boundary families and both x-regions.
    """
    cfg = config or SolverConfig(tol=tol)
    target = _check_target(delta)
    us = np.linspace(0.0, 1.0, cfg.grid)
    ts = np.linspace(0.0, 1.0, cfg.ratio_grid)
    hu, ht = 1.0 / (cfg.grid - 1), 1.0 / (cfg.ratio_grid - 1)
    candidates = []
    family_values: dict[str, float] = {}
    for family in FAMILIES:
        for region in REGIONS:
            vals = _grid_values(P_f, family, region, us, ts, target)
            key = f"{family}, {region}"
            if not np.isfinite(vals).any():
                family_values[key] = math.inf
                continue
            i, j = np.unravel_index(int(np.argmin(vals)), vals.shape)

            def obj(u, t, family=family, region=region):
                return _objective_point(P_f, family, region, u, t, target, cfg.level_tol)[0]

            u, t, val = _refine_2d(obj, float(us[i]), float(ts[j]), hu, ht, cfg.tol, cfg.max_sweeps)
            if vals[i, j] < val:
                u, t, val = float(us[i]), float(ts[j]), float(vals[i, j])
            family_values[key] = float(val)
            candidates.append((float(val), family, region, u, t))
    if not candidates:
        raise SolverInfeasible("f has no x-dependent term on either boundary family")
    val, family, region, u, t = min(candidates, key=lambda c: c[0])
    _, point = _objective_point(P_f, family, region, u, t, target, cfg.level_tol)
    point = _shrink_idle_x(P_f, point, target, cfg.level_tol)
    region = "x2<=x1" if point[1] <= point[0] else "x1<=x2"
    flat_u = _local_flatness(
        lambda v: _objective_point(P_f, family, region, v, t, target, cfg.level_tol)[0], u, val)
    flat_t = _local_flatness(
        lambda v: _objective_point(P_f, family, region, u, v, target, cfg.level_tol)[0], t, val)
    residual = abs(P_f.evaluate(*point) - target)
    return VariationalResult(
        value=val, argmin=point, family=family, region=region,
        tol_achieved=max(flat_u, flat_t), feasible=True, level_residual=residual,
        family_values=family_values, grid=(cfg.grid, cfg.ratio_grid))


# -- bounds and certificates ---------------------------------------------------

def _argmin_on(result: VariationalResult, coord: int, atol: float = 1e-6) -> bool:
    return abs(result.argmin[coord] - 1.0) <= atol


def tightness_certificates(profiles: Sequence[SetProfile],
                           G_res: VariationalResult | None = None) -> list[str]:
    """Sufficient conditions for ``F == G`` (and where G is attained) that hold.

    Labels ``i`` and ``ii`` only locate the minimizer of G; the others
    each imply ``F == G``. ``iv``, ``v`` and ``vii`` read the computed G
    minimizer when the structural condition is not available.
    """
    fired = []
    nonempty = [p for p in profiles if p.S]
    cond_i = all(2 * p.a >= p.size for p in nonempty)
    cond_ii = all(2 * p.b >= p.size for p in nonempty)
    if cond_i:
        fired.append("i: 2a_S >= |S| for all S, so G is attained with y1 = 1")
    if cond_ii:
        fired.append("ii: 2b_S >= |S| for all S, so G is attained with y2 = 1")
    if cond_i and cond_ii:
        fired.append("iii: G is attained at y1 = y2 = 1, so F = G")
    y2_one = cond_ii or (G_res is not None and _argmin_on(G_res, 3))
    y1_one = cond_i or (G_res is not None and _argmin_on(G_res, 2))
    if all(p.a == p.A for p in profiles) and y2_one:
        fired.append("iv: a_S = A_S for all S and G is attained with y2 = 1, so F = G")
    if all(p.b == p.B for p in profiles) and y1_one:
        fired.append("v: b_S = B_S for all S and G is attained with y1 = 1, so F = G")
    if all(p.a == p.A and p.b == p.B for p in profiles):
        fired.append("vi: f and g coincide termwise, so F = G")
    if not (cond_i and cond_ii) and G_res is not None and _argmin_on(G_res, 2) and _argmin_on(G_res, 3):
        fired.append("vii: the computed G minimizer has y1 = y2 = 1, where f = g, so F = G")
    return fired


def _certifies_equality(certs: Sequence[str]) -> bool:
    return any(c.split(":")[0] in ("iii", "iv", "v", "vi", "vii") for c in certs)


def clique_branch(D: Digraph, delta: float) -> float | None:
    flags = classify(D)
    if not flags.regular:
        return None
    return delta ** (2.0 / D.n)


def assemble_bounds(D: Digraph, delta: float, F_res: VariationalResult,
                    G_res: VariationalResult, certificates: Sequence[str] = (),
                    tol: float = 1e-9) -> BoundsReport:
    flags = classify(D)
    rec = degrees(D)
    warnings = []
    clique = delta ** (2.0 / D.n) if flags.regular else None
    upper = F_res.value
    if clique is not None and flags.connected:
        upper = min(upper, clique)
    lower = G_res.value if clique is None else min(G_res.value, clique)
    certs = list(certificates)
    if clique is not None and flags.connected and clique <= lower:
        certs.append("clique: delta^(2/v(H)) is below G, so both bounds equal the clique branch")
    if not flags.connected:
        warnings.append("H not connected: the asymptotic bound theorems assume connectivity")
    if rec.max_degree < 2:
        warnings.append("Δ<2: lower-bound theorem inapplicable")
    if not flags.oriented:
        warnings.append("H not oriented: Theorem 1.1(a) inapplicable")
    if not (F_res.feasible and G_res.feasible):
        verdict = Tightness.UNKNOWN
    elif _certifies_equality(certs) or any(c.startswith("clique") for c in certs):
        verdict = Tightness.TIGHT_CERTIFIED
    elif abs(upper - lower) <= 10 * tol * max(1.0, abs(upper)):
        verdict = Tightness.TIGHT_NUMERICAL
    else:
        verdict = Tightness.GAP
    return BoundsReport(
        delta=delta, F_value=F_res.value, G_value=G_res.value, clique_branch=clique,
        upper_bound=upper, lower_bound=lower, tightness=verdict, certificates=certs,
        tol=tol, warnings=warnings)


def closed_form(D: Digraph, delta: float) -> float | None:
    """Known answers: one-way star ``delta``, mixed star ``2 delta``, triangles."""
    flags = classify(D)
    rec = degrees(D)
    if flags.is_star:
        hub = rec.deg.index(rec.max_degree)
        mixed = rec.in_deg[hub] > 0 and rec.out_deg[hub] > 0
        return 2 * delta if mixed else delta
    if D.n == 3 and D.m == 3 and flags.oriented:
        return min(delta ** (2.0 / 3.0), 2.0 * delta / 3.0)
    return None
