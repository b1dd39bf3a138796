"""Bipartite witnesses of independent sets and their directional matching bounds.

For an independent set ``S`` of the max-degree core, the witness is the
bipartite digraph on ``S`` and ``T = N(S)`` spanned by the edges of ``H``
incident to ``S``. The directional bounds ``a`` (resp. ``b``) are the
largest total weight a maximum fractional matching can put on ``S -> T``
(resp. ``T -> S``) arcs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Literal

from .digraph import Digraph, max_degree_core
from .lp import InfeasibleLP, maximize

__all__ = [
    "Arc",
    "BipartiteWitness",
    "FractionalMatching",
    "DirectionalBounds",
    "WitnessError",
    "NotSaturableError",
    "induced_bipartite",
    "max_matching",
    "maximum_matching_pairs",
    "min_vertex_cover",
    "max_fractional_matching",
    "max_fractional_matching_value",
    "directional_bounds",
    "brute_force_directional_bounds",
    "fill_bounds",
    "directional_tau",
]

OUT: Literal["out"] = "out"
IN: Literal["in"] = "in"
BRUTE_FORCE_ARC_CAP = 24


class WitnessError(ValueError):
    pass


class NotSaturableError(ValueError):
    """No maximum fractional matching saturates the S side."""


@dataclass(frozen=True)
class Arc:
    s: int
    t: int
    direction: Literal["out", "in"]  # "out": s -> t, "in": t -> s

    def as_edge(self) -> tuple[int, int]:
        return (self.s, self.t) if self.direction == OUT else (self.t, self.s)


@dataclass(frozen=True)
class BipartiteWitness:
    s_side: tuple[int, ...]
    t_side: tuple[int, ...]
    arcs: tuple[Arc, ...]

    def __post_init__(self):
        S, T = set(self.s_side), set(self.t_side)
        if S & T:
            raise WitnessError("S and T sides overlap")
        for arc in self.arcs:
            if arc.s not in S or arc.t not in T:
                raise WitnessError(f"arc {arc} does not join S to T")

    @classmethod
    def from_edges(cls, s_side: Iterable[int], t_side: Iterable[int],
                   edges: Iterable[tuple[int, int]]) -> "BipartiteWitness":
        """Build from directed edges; each must have one endpoint on each side."""
        S = tuple(sorted(set(s_side)))
        T = tuple(sorted(set(t_side)))
        Sset = set(S)
        arcs = []
        for u, v in sorted(set(edges)):
            if u in Sset:
                arcs.append(Arc(u, v, OUT))
            else:
                arcs.append(Arc(v, u, IN))
        return cls(S, T, tuple(arcs))

    @property
    def out_arcs(self) -> list[Arc]:
        return [a for a in self.arcs if a.direction == OUT]

    @property
    def in_arcs(self) -> list[Arc]:
        return [a for a in self.arcs if a.direction == IN]

    def pairs(self) -> list[tuple[int, int]]:
        """Undirected S-T pairs; opposite arcs on one pair collapse."""
        return sorted({(a.s, a.t) for a in self.arcs})

    def as_dict(self) -> dict:
        return {
            "s_side": list(self.s_side),
            "t_side": list(self.t_side),
            "arcs": [[a.s, a.t, a.direction] for a in self.arcs],
        }


@dataclass(frozen=True)
class FractionalMatching:
    witness: BipartiteWitness
    weights: tuple[Fraction, ...]  # aligned with witness.arcs

    @property
    def value(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    def load(self, v: int) -> Fraction:
        return sum((w for a, w in zip(self.witness.arcs, self.weights) if v in (a.s, a.t)),
                   Fraction(0))


@dataclass(frozen=True)
class DirectionalBounds:
    a: Fraction
    b: Fraction
    out_matching: FractionalMatching | None = None
    in_matching: FractionalMatching | None = None


def induced_bipartite(D: Digraph, S: Iterable[int]) -> BipartiteWitness:
    S = tuple(sorted(set(S)))
    if not S:
        raise WitnessError("the empty set has no witness")
    core, adj = max_degree_core(D)
    members = set(S)
    if not members <= set(core):
        raise WitnessError(f"{S} is not contained in the max-degree core")
    if any(adj[v] & members for v in S):
        raise WitnessError(f"{S} is not independent in the max-degree core")
    incident = [(u, v) for u, v in D.edges if u in members or v in members]
    if any(u in members and v in members for u, v in incident):
        raise WitnessError(f"{S} is not independent in H")
    T = {v for e in incident for v in e} - members
    return BipartiteWitness.from_edges(S, T, incident)


def maximum_matching_pairs(F: BipartiteWitness) -> dict[int, int]:
    """A maximum matching as ``{s: t}`` via augmenting paths (Kuhn)."""
    adj: dict[int, list[int]] = {s: [] for s in F.s_side}
    for s, t in F.pairs():
        adj[s].append(t)
    match_t: dict[int, int] = {}

    def augment(s: int, seen: set[int]) -> bool:
        for t in adj[s]:
            if t in seen:
                continue
            seen.add(t)
            if t not in match_t or augment(match_t[t], seen):
                match_t[t] = s
                return True
        return False

    for s in F.s_side:
        augment(s, set())
    return {s: t for t, s in match_t.items()}


def max_matching(F: BipartiteWitness) -> int:
    return len(maximum_matching_pairs(F))


def min_vertex_cover(F: BipartiteWitness) -> tuple[int, frozenset[int]]:
    """Minimum vertex cover by König's construction from a maximum matching.

    Z = vertices reachable from unmatched S vertices by alternating paths;
    the cover is ``(S \\ Z) | (T & Z)``.
    """
    matching = maximum_matching_pairs(F)
    match_t = {t: s for s, t in matching.items()}
    adj: dict[int, list[int]] = {s: [] for s in F.s_side}
    for s, t in F.pairs():
        adj[s].append(t)
    frontier = [s for s in F.s_side if s not in matching]
    reached_s = set(frontier)
    reached_t: set[int] = set()
    while frontier:
        s = frontier.pop()
        for t in adj[s]:
            if t in reached_t:
                continue
            reached_t.add(t)
            nxt = match_t.get(t)
            if nxt is not None and nxt not in reached_s:
                reached_s.add(nxt)
                frontier.append(nxt)
    cover = frozenset((set(F.s_side) - reached_s) | reached_t)
    return len(cover), cover


def _vertex_rows(F: BipartiteWitness) -> tuple[list[list[int]], list[list[int]]]:
    s_rows = [[1 if v == a.s else 0 for a in F.arcs] for v in F.s_side]
    t_rows = [[1 if v == a.t else 0 for a in F.arcs] for v in F.t_side]
    return s_rows, t_rows


def max_fractional_matching(F: BipartiteWitness) -> FractionalMatching:
    if not F.arcs:
        return FractionalMatching(F, ())
    s_rows, t_rows = _vertex_rows(F)
    rows = s_rows + t_rows
    res = maximize([1] * len(F.arcs), A_ub=rows, b_ub=[1] * len(rows))
    return FractionalMatching(F, res.x)


def max_fractional_matching_value(F: BipartiteWitness) -> Fraction:
    return max_fractional_matching(F).value


def _saturating_lp(F: BipartiteWitness, direction: str) -> FractionalMatching:
    # Maximum fractional matchings are exactly those with every S load equal
    # to 1 whenever tau(F) = |S|, so one LP replaces the two-stage problem.
    s_rows, t_rows = _vertex_rows(F)
    c = [1 if a.direction == direction else 0 for a in F.arcs]
    try:
        res = maximize(c, A_eq=s_rows, b_eq=[1] * len(s_rows),
                       A_ub=t_rows, b_ub=[1] * len(t_rows))
    except InfeasibleLP:
        raise NotSaturableError(
            f"no fractional matching saturates S={F.s_side}; the witness is not "
            "generated by an independent set of the max-degree core") from None
    return FractionalMatching(F, res.x)


def directional_bounds(F: BipartiteWitness) -> DirectionalBounds:
    if not F.s_side:
        return DirectionalBounds(Fraction(0), Fraction(0))
    out_m = _saturating_lp(F, OUT)
    in_m = _saturating_lp(F, IN)
    a = sum((w for arc, w in zip(F.arcs, out_m.weights) if arc.direction == OUT), Fraction(0))
    b = sum((w for arc, w in zip(F.arcs, in_m.weights) if arc.direction == IN), Fraction(0))
    return DirectionalBounds(a, b, out_m, in_m)


def brute_force_directional_bounds(F: BipartiteWitness,
                                   cap: int = BRUTE_FORCE_ARC_CAP) -> DirectionalBounds:
    """Exhaustive oracle: best integral S-saturating matching per direction."""
    if len(F.arcs) > cap:
        raise ValueError(f"{len(F.arcs)} arcs exceeds brute-force cap {cap}")
    by_s: dict[int, list[Arc]] = {s: [] for s in F.s_side}
    for arc in F.arcs:
        by_s[arc.s].append(arc)
    order = list(F.s_side)
    best = {OUT: -1, IN: -1}

    def walk(i: int, used: set[int], n_out: int, n_in: int) -> None:
        if i == len(order):
            best[OUT] = max(best[OUT], n_out)
            best[IN] = max(best[IN], n_in)
            return
        for arc in by_s[order[i]]:
            if arc.t in used:
                continue
            used.add(arc.t)
            walk(i + 1, used, n_out + (arc.direction == OUT), n_in + (arc.direction == IN))
            used.remove(arc.t)

    walk(0, set(), 0, 0)
    if best[OUT] < 0:
        raise NotSaturableError(f"no matching saturates S={F.s_side}")
    return DirectionalBounds(Fraction(best[OUT]), Fraction(best[IN]))


def fill_bounds(D: Digraph, profiles):
    """Return profiles with ``a``/``b`` filled from the directional LP."""
    out = []
    for prof in profiles:
        if not prof.S:
            out.append(prof.with_bounds(0, 0))
            continue
        db = directional_bounds(induced_bipartite(D, prof.S))
        if db.a.denominator != 1 or db.b.denominator != 1:
            raise ArithmeticError(f"non-integral directional bound for S={prof.S}: {db}")
        out.append(prof.with_bounds(int(db.a), int(db.b)))
    return out


def directional_tau(F: BipartiteWitness, direction: str) -> int:
    """Minimum vertex cover of the sub-witness keeping one arc direction."""
    sub = BipartiteWitness(F.s_side, F.t_side,
                           tuple(a for a in F.arcs if a.direction == direction))
    return min_vertex_cover(sub)[0]

