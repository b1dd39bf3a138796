"""Random digraphs, homomorphism counts, tail estimates and a finite-n upper bound.

Every random quantity takes an explicit integer seed and draws from
``numpy.random.Generator(numpy.random.Philox(seed))``, a 64-bit
counter-based generator, so results are reproducible bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .digraph import Digraph, degrees
from .graphon import _einsum_spec, ip_array

__all__ = [
    "GENERATOR_NAME",
    "CapExceeded",
    "TailEstimate",
    "PhiSearchResult",
    "rng",
    "sample_digraph",
    "hom_count",
    "hom_density",
    "wilson_interval",
    "mc_upper_tail",
    "log_binomial_tail",
    "binomial_tail_c2",
    "single_edge_tail",
    "penalty_objective",
    "discrete_phi_upper",
]

GENERATOR_NAME = "numpy.random.Philox"
HOM_CAP = 10 ** 8


class CapExceeded(ValueError):
    """An exhaustive count or search would exceed its size cap."""


def rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


@dataclass(frozen=True)
class TailEstimate:
    """``-log P(t(H, G) >= (1 + delta) p^e(H))`` with a confidence half-width."""

    estimate: float
    half_width: float
    samples: int
    exact: bool
    hits: int = 0
    one_sided: bool = False
    interval: tuple[float, float] = (0.0, 0.0)
    seed: int | None = None
    generator: str = GENERATOR_NAME

    def as_dict(self) -> dict:
        return {
            "estimate": self.estimate, "half_width": self.half_width,
            "samples": self.samples, "exact": self.exact, "hits": self.hits,
            "one_sided": self.one_sided, "interval": list(self.interval),
            "seed": self.seed, "generator": self.generator,
        }


def sample_digraph(n: int, p: float, seed: int, size: int | None = None) -> np.ndarray:
    """Adjacency matrix (or a stack of ``size`` of them) of the directed G(n, p)."""
    if n < 1 or not 0.0 <= p <= 1.0:
        raise ValueError("need n >= 1 and p in [0, 1]")
    gen = rng(seed)
    shape = (n, n) if size is None else (size, n, n)
    A = (gen.random(shape) < p).astype(np.float64)
    idx = np.arange(n)
    A[..., idx, idx] = 0.0
    return A


def hom_count(H: Digraph, Q: np.ndarray, cap: int = HOM_CAP) -> np.ndarray | float:
    """``sum over maps V(H) -> [n]`` of the product of ``Q`` over the edges of ``H``.

    ``Q`` may carry leading batch axes. Maps that collapse an edge pick up a
    diagonal entry and so vanish for matrices in ``Q_n``.
    """
    Q = np.asarray(Q, dtype=float)
    n = Q.shape[-1]
    if float(n) ** H.n > cap:
        raise CapExceeded(f"n^v(H) = {n}^{H.n} exceeds the cap {cap}")
    edge_terms, letters = _einsum_spec(H)
    batch = Q.ndim > 2
    if not edge_terms:
        base = float(n) ** H.n
        return np.full(Q.shape[:-2], base) if batch else base
    pre = "Z" if batch else ""
    isolated = [c for c in letters if not any(c in t for t in edge_terms)]
    subs = ",".join(pre + t for t in edge_terms) + "->" + pre
    out = np.einsum(subs, *([Q] * len(edge_terms)), optimize="greedy")
    out = out * float(n) ** len(isolated)
    return out if batch else float(out)


def hom_density(H: Digraph, Q: np.ndarray) -> np.ndarray | float:
    return hom_count(H, Q) / float(Q.shape[-1]) ** H.n


def wilson_interval(hits: int, trials: int, z: float = 1.959963984540054) -> tuple[float, float]:
    if trials <= 0:
        raise ValueError("need at least one trial")
    phat = hits / trials
    denom = 1 + z * z / trials
    centre = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    lo = 0.0 if hits == 0 else max(0.0, centre - half)
    hi = 1.0 if hits == trials else min(1.0, centre + half)
    return lo, hi


def mc_upper_tail(H: Digraph, n: int, p: float, delta: float, samples: int, seed: int,
                  batch: int = 2000) -> TailEstimate:
    """Monte Carlo estimate of the upper-tail rate with a 95% Wilson interval.

    With zero hits the estimate is the lower end ``-log(upper Wilson bound)``
    and ``one_sided`` is set.
    """
    if samples <= 0:
        raise ValueError("samples must be positive")
    if float(n) ** H.n > HOM_CAP:
        raise CapExceeded(f"n^v(H) = {n}^{H.n} exceeds the cap {HOM_CAP}")
    threshold = (1 + delta) * p ** H.m * float(n) ** H.n
    gen = rng(seed)
    hits = 0
    done = 0
    idx = np.arange(n)
    while done < samples:
        size = min(batch, samples - done)
        A = (gen.random((size, n, n)) < p).astype(np.float64)
        A[:, idx, idx] = 0.0
        counts = np.atleast_1d(hom_count(H, A))
        # hom counts of 0/1 matrices are exact integers in float64
        hits += int(np.count_nonzero(counts >= threshold - 1e-9 * max(1.0, abs(threshold))))
        done += size
    lo, hi = wilson_interval(hits, samples)
    if hits == 0:
        est = -math.log(hi)
        return TailEstimate(est, 0.0, samples, False, 0, True, (est, math.inf), seed)
    est = -math.log(hits / samples)
    interval = (-math.log(hi), -math.log(lo) if lo > 0 else math.inf)
    half = max(est - interval[0], interval[1] - est)
    return TailEstimate(est, half, samples, False, hits, False, interval, seed)


def log_binomial_tail(m: int, q: float, k: int) -> float:
    """``log P(Bin(m, q) >= k)`` by log-space summation of the pmf."""
    if k <= 0:
        return 0.0
    if k > m:
        return -math.inf
    if q <= 0.0:
        return -math.inf
    if q >= 1.0:
        return 0.0
    lq, l1q = math.log(q), math.log1p(-q)
    lgm = math.lgamma(m + 1)
    terms = np.array([lgm - math.lgamma(j + 1) - math.lgamma(m - j + 1) + j * lq + (m - j) * l1q
                      for j in range(k, m + 1)])
    top = terms.max()
    return float(top + math.log(np.exp(terms - top).sum()))


def binomial_tail_c2(n: int, p: float, delta: float) -> tuple[float, float]:
    """Exact upper tail for the 2-cycle, paired with ``n^2 p^2 [(1+delta) log(1+delta) - delta] / 2``.

    hom(C2, G) is twice the number of mutual pairs, ``Bin(m, p^2)`` with
    ``m = n(n-1)/2``, so ``t >= (1+delta) p^2`` reads ``Bin >= (1+delta) p^2 n^2 / 2``.
    """
    m = n * (n - 1) // 2
    q = p * p
    k = math.ceil((1 + delta) * q * n * n / 2 - 1e-9)
    exact = -log_binomial_tail(m, q, k)
    if delta > -1:
        formula = 0.5 * n * n * q * ((1 + delta) * math.log1p(delta) - delta)
    else:
        formula = 0.5 * n * n * q
    return exact, formula


def single_edge_tail(n: int, p: float, delta: float) -> float:
    """Exact rate for a single edge: edge count ``Bin(n(n-1), p)`` against ``(1+delta) p n^2``."""
    k = math.ceil((1 + delta) * p * n * n - 1e-9)
    return -log_binomial_tail(n * (n - 1), p, k)


# -- finite-n variational upper bound ------------------------------------------

def _offdiag_mask(n: int) -> np.ndarray:
    return ~np.eye(n, dtype=bool)


def _density_and_grad(H: Digraph, Q: np.ndarray) -> tuple[float, np.ndarray]:
    n = Q.shape[0]
    edge_terms, letters = _einsum_spec(H)
    norm = float(n) ** H.n
    isolated = sum(1 for c in letters if not any(c in t for t in edge_terms))
    iso = float(n) ** isolated
    t = np.einsum(",".join(edge_terms) + "->", *([Q] * len(edge_terms)), optimize="greedy") * iso / norm
    grad = np.zeros_like(Q)
    for k, term in enumerate(edge_terms):
        others = edge_terms[:k] + edge_terms[k + 1:]
        if term[0] == term[1]:
            continue
        present = "".join(c for c in term if any(c in o for o in others))
        if present:
            g = np.einsum(",".join(others) + "->" + present, *([Q] * len(others)), optimize="greedy")
        else:
            g = np.asarray(1.0)
        # an endpoint used by no other edge contributes a broadcast axis
        if present == term[1] or present == "":
            g = np.broadcast_to(g, Q.shape)
        elif present == term[0]:
            g = np.broadcast_to(g[:, None], Q.shape)
        grad += g * iso / norm
    return float(t), grad


def penalty_objective(H: Digraph, Q: np.ndarray, p: float, delta: float, mu: float
                      ) -> tuple[float, np.ndarray]:
    """``I_p(Q) + mu * max(0, (1+delta) p^e - t(H, Q))^2`` and its gradient."""
    mask = _offdiag_mask(Q.shape[0])
    target = (1 + delta) * p ** H.m
    t, dt = _density_and_grad(H, Q)
    x = np.clip(Q, 1e-300, 1 - 1e-16)
    value = float(ip_array(Q, p)[mask].sum())
    grad = np.where(mask, np.log(x / p) - np.log((1 - x) / (1 - p)), 0.0)
    gap = target - t
    if gap > 0:
        value += mu * gap * gap
        grad = grad - 2 * mu * gap * np.where(mask, dt, 0.0)
    return value, grad


@dataclass
class PhiSearchResult:
    value: float
    Q: np.ndarray
    density_ratio: float
    start: str
    trace: list[dict] = field(default_factory=list)


def _repair(H: Digraph, Q: np.ndarray, target: float) -> np.ndarray | None:
    """Push entries toward 1 just enough to meet the density target."""
    mask = _offdiag_mask(Q.shape[0])
    full = np.where(mask, 1.0, 0.0)
    if hom_density(H, full) < target:
        return None
    if hom_density(H, Q) >= target:
        return Q
    lo, hi = 0.0, 1.0
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        trial = np.where(mask, Q + mid * (1 - Q), 0.0)
        if hom_density(H, trial) >= target:
            hi = mid
        else:
            lo = mid
    return np.where(mask, Q + hi * (1 - Q), 0.0)


def _starts(H: Digraph, n: int, p: float, delta: float, restarts: int, seed: int,
            hub_point: Sequence[float] | None) -> list[tuple[str, np.ndarray]]:
    mask = _offdiag_mask(n)
    rec = degrees(H)
    starts = [("constant", np.where(mask, p, 0.0))]
    if hub_point is not None:
        x1, x2, y1, y2 = hub_point
        scale = p ** rec.max_degree * n
        a1 = min(n, max(1 if x1 > 0 else 0, round(x1 * scale)))
        a2 = min(n, max(1 if x2 > 0 else 0, round(x2 * scale)))
        b1, b2 = min(n, max(a1, round(y1 * n))), min(n, max(a2, round(y2 * n)))
        Q = np.full((n, n), p)
        Q[:a1, :b1] = 1.0
        Q[:b2, :a2] = 1.0
        starts.append(("hub", np.where(mask, Q, 0.0)))
    c = max(2, round((max(delta, 0.0) ** (1.0 / H.n)) * p ** (rec.max_degree / 2) * n))
    Q = np.full((n, n), p)
    Q[:c, :c] = 1.0
    starts.append(("clique", np.where(mask, Q, 0.0)))
    gen = rng(seed)
    for r in range(max(0, restarts - len(starts))):
        starts.append((f"random-{r}", np.where(mask, gen.uniform(p, 1.0, (n, n)), 0.0)))
    return starts


def discrete_phi_upper(H: Digraph, n: int, p: float, delta: float, restarts: int = 4,
                       seed: int = 0, hub_point: Sequence[float] | None = None,
                       rounds: int = 5, inner: int = 200) -> PhiSearchResult:
    """Best feasible ``I_p(Q)`` found by penalized projected gradient over ``Q_n``.

    Nonconvex, so this is an upper bound on the finite-n problem only.
    Entries are projected onto ``[p, 1]``; the penalty weight grows tenfold
    per round and the step is found by backtracking halving. Every candidate
    is repaired to exact feasibility before it is scored.
    """
    if n > 8 or H.n > 4:
        raise CapExceeded("discrete_phi_upper caps: n <= 8, v(H) <= 4")
    mask = _offdiag_mask(n)
    target = (1 + delta) * p ** H.m
    lo_box, hi_box = p, 1.0 - 1e-12
    best: PhiSearchResult | None = None
    for name, Q0 in _starts(H, n, p, delta, restarts, seed, hub_point):
        Q = np.where(mask, np.clip(Q0, lo_box, hi_box), 0.0)
        mu = 1.0 / max(target, 1e-300) ** 2
        trace = []
        for _ in range(rounds):
            val, grad = penalty_objective(H, Q, p, delta, mu)
            step = 1.0
            for _ in range(inner):
                while step > 1e-14:
                    trial = np.where(mask, np.clip(Q - step * grad, lo_box, hi_box), 0.0)
                    tval, tgrad = penalty_objective(H, trial, p, delta, mu)
                    if tval < val:
                        break
                    step *= 0.5
                else:
                    break
                Q, val, grad = trial, tval, tgrad
                step = min(1.0, step * 2.0)
            trace.append({"mu": mu, "value": val})
            mu *= 10.0
        fixed = _repair(H, Q, target)
        if fixed is None:
            continue
        cost = float(ip_array(fixed, p)[mask].sum())
        if best is None or cost < best.value:
            best = PhiSearchResult(cost, fixed, hom_density(H, fixed) / p ** H.m, name, trace)
    if best is None:
        raise RuntimeError("no feasible matrix found: the density target exceeds t(H, K_n)")
    return best

