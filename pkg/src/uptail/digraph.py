"""Simple digraphs, degree data, the max-degree core and its independent sets."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

__all__ = [
    "Digraph",
    "DegreeRecord",
    "NeighborhoodProfile",
    "SetProfile",
    "ClassificationFlags",
    "DigraphParseError",
    "MalformedLineError",
    "VertexRangeError",
    "DuplicateEdgeError",
    "SelfLoopError",
    "CoreTooLargeError",
    "parse_digraph",
    "serialize_digraph",
    "degrees",
    "max_degree_core",
    "enumerate_independent_sets",
    "independent_sets",
    "neighborhood_profile",
    "set_profile",
    "classify",
]

DEFAULT_CORE_CAP = 26


class DigraphParseError(ValueError):
    """Base class for edge-list parse failures."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class MalformedLineError(DigraphParseError):
    pass


class VertexRangeError(DigraphParseError):
    pass


class DuplicateEdgeError(DigraphParseError):
    pass


class SelfLoopError(DigraphParseError):
    pass


class CoreTooLargeError(RuntimeError):
    """The max-degree core is too large to enumerate its independent sets."""


@dataclass(frozen=True)
class Digraph:
    """A simple digraph on vertices ``0..n-1``.

    ``edges`` holds ordered pairs. Both ``(u, v)`` and ``(v, u)`` may be
    present (a 2-cycle); self-loops and repeated pairs are rejected.
    """

    n: int
    edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 1:
            raise ValueError("a digraph needs at least one vertex")
        edge_list = [(int(u), int(v)) for u, v in edges]
        seen = set()
        for u, v in edge_list:
            if u == v:
                raise SelfLoopError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise VertexRangeError(f"edge ({u}, {v}) outside [0, {n})")
            if (u, v) in seen:
                raise DuplicateEdgeError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "edges", frozenset(seen))

    @property
    def m(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def out_neighbors(self, v: int) -> set[int]:
        return {b for a, b in self.edges if a == v}

    def in_neighbors(self, v: int) -> set[int]:
        return {a for a, b in self.edges if b == v}

    def adjacent(self, u: int, v: int) -> bool:
        return (u, v) in self.edges or (v, u) in self.edges

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, edges={self.sorted_edges()})"


@dataclass(frozen=True)
class DegreeRecord:
    in_deg: tuple[int, ...]
    out_deg: tuple[int, ...]
    deg: tuple[int, ...]
    max_degree: int


@dataclass(frozen=True)
class NeighborhoodProfile:
    n_plus: frozenset[int]
    n_minus: frozenset[int]
    n_all: frozenset[int]
    n_pm: frozenset[int]
    n_plus0: frozenset[int]
    n_minus0: frozenset[int]


@dataclass(frozen=True)
class SetProfile:
    """Exponent data of one independent set ``S`` of the core.

    ``a`` and ``b`` stay ``None`` until the directional matching bounds
    are filled in with :meth:`with_bounds`.
    """

    S: tuple[int, ...]
    v_plus: int
    v_minus: int
    v_pm: int
    A: int
    B: int
    n_plus0: int
    n_minus0: int
    n_pm: int
    a: int | None = None
    b: int | None = None

    @property
    def size(self) -> int:
        return len(self.S)

    def with_bounds(self, a: int, b: int) -> "SetProfile":
        return SetProfile(self.S, self.v_plus, self.v_minus, self.v_pm, self.A,
                          self.B, self.n_plus0, self.n_minus0, self.n_pm, a, b)

    def as_dict(self) -> dict:
        return {
            "S": list(self.S), "v_plus": self.v_plus, "v_minus": self.v_minus,
            "v_pm": self.v_pm, "A": self.A, "B": self.B,
            "n_plus0": self.n_plus0, "n_minus0": self.n_minus0, "n_pm": self.n_pm,
            "a": self.a, "b": self.b,
        }


@dataclass(frozen=True)
class ClassificationFlags:
    oriented: bool
    connected: bool
    regular: bool
    balanced_at_max: bool
    balanced: bool
    bipartite: bool
    is_star: bool
    is_directed_cycle: bool

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def parse_digraph(text: str) -> Digraph:
    """Parse the edge-list format: header ``n m`` then ``m`` lines ``u v``.

    Blank lines and anything after ``#`` are ignored.
    """
    rows: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            rows.append((lineno, body.split()))
    if not rows:
        raise MalformedLineError("missing header line 'n m'")

    def ints(lineno: int, tokens: list[str]) -> tuple[int, int]:
        if len(tokens) != 2:
            raise MalformedLineError(f"expected two integers, got {' '.join(tokens)!r}", lineno)
        try:
            return int(tokens[0]), int(tokens[1])
        except ValueError:
            raise MalformedLineError(f"non-integer token in {' '.join(tokens)!r}", lineno) from None

    head_line, head = rows[0]
    n, m = ints(head_line, head)
    if n < 1 or m < 0:
        raise MalformedLineError("header needs n >= 1 and m >= 0", head_line)
    if len(rows) - 1 != m:
        raise MalformedLineError(f"header declares {m} edges, found {len(rows) - 1}", head_line)

    seen: set[tuple[int, int]] = set()
    for lineno, tokens in rows[1:]:
        u, v = ints(lineno, tokens)
        if not (0 <= u < n and 0 <= v < n):
            raise VertexRangeError(f"vertex index out of range [0, {n}) in ({u}, {v})", lineno)
        if u == v:
            raise SelfLoopError(f"self-loop at vertex {u}", lineno)
        if (u, v) in seen:
            raise DuplicateEdgeError(f"duplicate edge ({u}, {v})", lineno)
        seen.add((u, v))
    return Digraph(n, seen)


def serialize_digraph(D: Digraph) -> str:
    lines = [f"{D.n} {D.m}"]
    lines.extend(f"{u} {v}" for u, v in D.sorted_edges())
    return "\n".join(lines) + "\n"


def degrees(D: Digraph) -> DegreeRecord:
    in_deg = [0] * D.n
    out_deg = [0] * D.n
    for u, v in D.edges:
        out_deg[u] += 1
        in_deg[v] += 1
    deg = tuple(i + o for i, o in zip(in_deg, out_deg))
    return DegreeRecord(tuple(in_deg), tuple(out_deg), deg, max(deg))


def max_degree_core(D: Digraph) -> tuple[tuple[int, ...], dict[int, frozenset[int]]]:
    """Vertices of degree Δ and their undirected adjacency induced from ``D``."""
    rec = degrees(D)
    core = tuple(v for v in range(D.n) if rec.deg[v] == rec.max_degree)
    members = set(core)
    adj = {v: set() for v in core}
    for u, v in D.edges:
        if u in members and v in members:
            adj[u].add(v)
            adj[v].add(u)
    return core, {v: frozenset(nb) for v, nb in adj.items()}


def enumerate_independent_sets(core: tuple[int, ...], adjacency: dict[int, frozenset[int]],
                               cap: int = DEFAULT_CORE_CAP) -> list[tuple[int, ...]]:
    """All independent sets of the core, ``()`` included.

    Ordered include/exclude backtracking; the result is sorted
    lexicographically by member tuple so output order is reproducible.
    """
    if len(core) > cap:
        raise CoreTooLargeError(f"core has {len(core)} vertices, cap is {cap}")
    order = sorted(core)
    found: list[tuple[int, ...]] = []

    def extend(i: int, chosen: list[int], blocked: frozenset[int]) -> None:
        if i == len(order):
            found.append(tuple(chosen))
            return
        v = order[i]
        extend(i + 1, chosen, blocked)
        if v not in blocked:
            chosen.append(v)
            extend(i + 1, chosen, blocked | adjacency[v])
            chosen.pop()

    extend(0, [], frozenset())
    found.sort()
    return found


def independent_sets(D: Digraph, cap: int = DEFAULT_CORE_CAP) -> list[tuple[int, ...]]:
    """Shortcut: the family S_H of independent sets of the max-degree core."""
    core, adj = max_degree_core(D)
    return enumerate_independent_sets(core, adj, cap)


def neighborhood_profile(D: Digraph, S: Iterable[int]) -> NeighborhoodProfile:
    members = set(S)
    plus = {v for u, v in D.edges if u in members and v not in members}
    minus = {u for u, v in D.edges if v in members and u not in members}
    return NeighborhoodProfile(
        n_plus=frozenset(plus),
        n_minus=frozenset(minus),
        n_all=frozenset(plus | minus),
        n_pm=frozenset(plus & minus),
        n_plus0=frozenset(plus - minus),
        n_minus0=frozenset(minus - plus),
    )


def set_profile(D: Digraph, S: Iterable[int], rec: DegreeRecord | None = None) -> SetProfile:
    S = tuple(sorted(set(S)))
    rec = rec or degrees(D)
    # v_plus: sources (no in-edges); v_minus: sinks (no out-edges)
    v_plus = sum(1 for v in S if rec.in_deg[v] == 0)
    v_minus = sum(1 for v in S if rec.out_deg[v] == 0 and rec.in_deg[v] > 0)
    v_pm = len(S) - v_plus - v_minus
    nb = neighborhood_profile(D, S)
    return SetProfile(
        S=S, v_plus=v_plus, v_minus=v_minus, v_pm=v_pm,
        A=len(nb.n_plus), B=len(nb.n_minus),
        n_plus0=len(nb.n_plus0), n_minus0=len(nb.n_minus0), n_pm=len(nb.n_pm),
    )


def _undirected_adjacency(D: Digraph) -> list[set[int]]:
    adj = [set() for _ in range(D.n)]
    for u, v in D.edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def _is_connected(adj: list[set[int]]) -> bool:
    seen = {0}
    stack = [0]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(adj)


def _is_bipartite(adj: list[set[int]]) -> bool:
    color: dict[int, int] = {}
    for start in range(len(adj)):
        if start in color:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in color:
                    color[w] = 1 - color[u]
                    stack.append(w)
                elif color[w] == color[u]:
                    return False
    return True


def classify(D: Digraph) -> ClassificationFlags:
    rec = degrees(D)
    adj = _undirected_adjacency(D)
    delta = rec.max_degree
    oriented = all((v, u) not in D.edges for u, v in D.edges)
    connected = _is_connected(adj)
    regular = all(d == delta for d in rec.deg)
    balanced_at_max = all(rec.in_deg[v] == rec.out_deg[v]
                          for v in range(D.n) if rec.deg[v] == delta)
    balanced = all(i == o for i, o in zip(rec.in_deg, rec.out_deg))
    hubs = [v for v in range(D.n) if rec.deg[v] == delta]
    is_star = (delta >= 2 and len(hubs) == 1 and oriented
               and all(rec.deg[v] == 1 for v in range(D.n) if v != hubs[0]))
    is_cycle = (D.n >= 2 and connected and D.m == D.n
                and all(i == 1 and o == 1 for i, o in zip(rec.in_deg, rec.out_deg)))
    return ClassificationFlags(
        oriented=oriented, connected=connected, regular=regular,
        balanced_at_max=balanced_at_max, balanced=balanced,
        bipartite=_is_bipartite(adj), is_star=is_star, is_directed_cycle=is_cycle,
    )


def brute_force_independent_sets(D: Digraph) -> list[tuple[int, ...]]:
    """Reference enumeration by filtering every subset of the core."""
    core, adj = max_degree_core(D)
    out = []
    for r in range(len(core) + 1):
        for combo in combinations(core, r):
            if all(b not in adj[a] for a, b in combinations(combo, 2)):
                out.append(combo)
    out.sort()
    return out
