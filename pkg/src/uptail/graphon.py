"""Block-constant directed graphons and the planted hub / clique candidates."""

from __future__ import annotations

import math
from dataclasses import dataclass
from string import ascii_letters
from typing import Sequence

import numpy as np

from .digraph import Digraph

__all__ = [
    "StepGraphon",
    "InfeasiblePlanting",
    "ip",
    "ip_array",
    "t_step",
    "ip_mass",
    "hub_graphon",
    "clique_graphon",
    "convergence_table",
]


class InfeasiblePlanting(ValueError):
    """The requested block measures do not fit in [0, 1]."""


@dataclass(frozen=True)
class StepGraphon:
    """``W(x, y) = values[i, j]`` for ``x`` in block ``i`` and ``y`` in block ``j``.

    Not required to be symmetric.
    """

    measures: np.ndarray
    values: np.ndarray
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        m = np.asarray(self.measures, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if m.ndim != 1 or v.shape != (m.size, m.size):
            raise ValueError("values must be k x k for k block measures")
        if np.any(m < 0) or abs(m.sum() - 1.0) > 1e-12:
            raise ValueError("block measures must be nonnegative and sum to 1")
        if np.any(v < 0) or np.any(v > 1):
            raise ValueError("graphon values must lie in [0, 1]")
        object.__setattr__(self, "measures", m)
        object.__setattr__(self, "values", v)

    @property
    def k(self) -> int:
        return self.measures.size

    @classmethod
    def constant(cls, p: float) -> "StepGraphon":
        return cls(np.array([1.0]), np.array([[p]]))


def ip(x: float, p: float) -> float:
    """Bernoulli relative entropy ``I_p(x)``, with ``0 log 0 = 0``."""
    if not 0.0 < p < 1.0:
        raise ValueError("p must lie in (0, 1)")
    if not 0.0 <= x <= 1.0:
        raise ValueError("x must lie in [0, 1]")
    out = 0.0
    if x > 0:
        out += x * math.log(x / p)
    if x < 1:
        out += (1 - x) * math.log((1 - x) / (1 - p))
    return out


def ip_array(x: np.ndarray, p: float) -> np.ndarray:
    if not 0.0 < p < 1.0:
        raise ValueError("p must lie in (0, 1)")
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        a = np.where(x > 0, x * np.log(x / p), 0.0)
        b = np.where(x < 1, (1 - x) * np.log((1 - x) / (1 - p)), 0.0)
    return a + b


def _einsum_spec(H: Digraph) -> tuple[list[str], str]:
    if H.n > len(ascii_letters):
        raise ValueError("too many vertices for index labelling")
    letters = ascii_letters[:H.n]
    return [letters[u] + letters[v] for u, v in H.sorted_edges()], letters


def t_step(H: Digraph, W: StepGraphon, max_vertices: int = 10, max_blocks: int = 12) -> float:
    """Exact homomorphism density of ``H`` in a step graphon.

    Equal to the sum over block assignments of vertex measures times edge
    values; evaluated as one tensor contraction.
    """
    if H.n > max_vertices or W.k > max_blocks:
        raise ValueError(f"t_step caps: v(H) <= {max_vertices}, k <= {max_blocks}")
    edge_terms, letters = _einsum_spec(H)
    operands = [W.values] * len(edge_terms) + [W.measures] * H.n
    subs = ",".join(edge_terms + list(letters)) + "->"
    return float(np.einsum(subs, *operands, optimize="greedy"))


def ip_mass(W: StepGraphon, p: float) -> float:
    """``E[I_p(W)]``: the entropy cost of the graphon relative to ``W == p``."""
    return float(W.measures @ ip_array(W.values, p) @ W.measures)


def hub_graphon(x1: float, x2: float, y1: float, y2: float, p: float, delta_max: int) -> StepGraphon:
    """Planted directed hubs for ``(x1, x2, y1, y2)`` at edge density ``p``.

    Row hub ``A1`` (measure ``x1 p^Δ``) is fully joined to ``B1`` (measure
    ``y1``); column hub ``A2`` receives full edges from ``B2``. Both hubs sit
    inside ``B1 & B2``. A hub whose partner set is empty plants nothing
    and is dropped. Zero-measure blocks are omitted.
    """
    if min(x1, x2, y1, y2) < 0 or max(y1, y2) > 1:
        raise InfeasiblePlanting("need x >= 0 and y in [0, 1]")
    scale = p ** delta_max
    if y1 == 0:
        x1 = 0.0
    if y2 == 0:
        x2 = 0.0
    x3 = min(x1, x2)
    y3 = min(y1, y2)
    a_both, a1_only, a2_only = x3 * scale, (x1 - x3) * scale, (x2 - x3) * scale
    a_union = a_both + a1_only + a2_only
    # (measure, in A1, in A2, in B1, in B2)
    if y1 > 0 and y2 > 0:
        blocks = [
            ("A1&A2", a_both, 1, 1, 1, 1),
            ("A1-A2", a1_only, 1, 0, 1, 1),
            ("A2-A1", a2_only, 0, 1, 1, 1),
            ("B1&B2-A", y3 - a_union, 0, 0, 1, 1),
            ("B1-B2", y1 - y3, 0, 0, 1, 0),
            ("B2-B1", y2 - y3, 0, 0, 0, 1),
            ("rest", 1 - (y1 + y2 - y3), 0, 0, 0, 0),
        ]
    elif y1 > 0:
        blocks = [("A1", a1_only, 1, 0, 1, 0), ("B1-A1", y1 - a1_only, 0, 0, 1, 0),
                  ("rest", 1 - y1, 0, 0, 0, 0)]
    elif y2 > 0:
        blocks = [("A2", a2_only, 0, 1, 0, 1), ("B2-A2", y2 - a2_only, 0, 0, 0, 1),
                  ("rest", 1 - y2, 0, 0, 0, 0)]
    else:
        blocks = [("rest", 1.0, 0, 0, 0, 0)]
    if any(b[1] < -1e-15 for b in blocks):
        bad = [b[0] for b in blocks if b[1] < -1e-15]
        raise InfeasiblePlanting(f"negative block measure for {bad} at p={p}")
    blocks = [b for b in blocks if b[1] > 0]
    measures = np.array([max(b[1], 0.0) for b in blocks])
    measures /= measures.sum()
    k = len(blocks)
    values = np.full((k, k), float(p))
    for i, (_, _, in_a1, in_a2, in_b1, in_b2) in enumerate(blocks):
        for j, (_, _, jn_a1, jn_a2, jn_b1, jn_b2) in enumerate(blocks):
            if (in_a1 and jn_b1) or (jn_a2 and in_b2):
                values[i, j] = 1.0
    return StepGraphon(measures, values, tuple(b[0] for b in blocks))


def clique_graphon(delta: float, p: float, v_h: int, delta_max: int) -> StepGraphon:
    """A bidirectional clique of side ``delta^(1/v(H)) p^(Δ/2)`` planted in ``W == p``."""
    c = delta ** (1.0 / v_h) * p ** (delta_max / 2.0) if delta > 0 else 0.0
    if c > 1:
        raise InfeasiblePlanting(f"clique side {c} exceeds 1")
    if c == 0:
        return StepGraphon.constant(p)
    if c == 1:
        return StepGraphon(np.array([1.0]), np.array([[1.0]]), ("clique",))
    values = np.array([[1.0, p], [p, p]])
    return StepGraphon(np.array([c, 1.0 - c]), values, ("clique", "rest"))


def convergence_table(H: Digraph, builder, ps: Sequence[float], objective: float,
                      delta_max: int) -> list[dict]:
    """Rows of ``t / p^e(H)`` and ``mass / (p^Δ log(1/p))`` for a planting family.

    ``builder(p)`` returns a graphon or raises :class:`InfeasiblePlanting`;
    infeasible rows are kept with an ``error`` entry.
    """
    rows = []
    for p in ps:
        try:
            W = builder(p)
        except InfeasiblePlanting as exc:
            rows.append({"p": p, "t_ratio": None, "mass_ratio": None, "error": str(exc)})
            continue
        t_ratio = t_step(H, W) / p ** H.m
        mass_ratio = ip_mass(W, p) / (p ** delta_max * math.log(1 / p))
        rows.append({"p": p, "t_ratio": t_ratio, "mass_ratio": mass_ratio,
                     "mass_target": objective, "error": None})
    return rows
