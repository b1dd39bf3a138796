"""Built-in digraphs: the small families with known answers."""

from __future__ import annotations

from .digraph import Digraph

__all__ = [
    "triangle_transitive",
    "triangle_cyclic",
    "out_star",
    "in_star",
    "mixed_star",
    "directed_cycle",
    "two_cycle",
    "single_edge",
    "hub_example",
    "gap_example",
    "BUILTIN",
]


def triangle_transitive() -> Digraph:
    """A=0, B=1, C=2 with B->A, B->C, C->A."""
    return Digraph(3, [(1, 0), (1, 2), (2, 0)])


def triangle_cyclic() -> Digraph:
    return directed_cycle(3)


def out_star(delta: int = 3) -> Digraph:
    return Digraph(delta + 1, [(0, i) for i in range(1, delta + 1)])


def in_star(delta: int = 3) -> Digraph:
    return Digraph(delta + 1, [(i, 0) for i in range(1, delta + 1)])


def mixed_star(delta: int = 3, n_in: int = 1) -> Digraph:
    """Center 0 with ``delta - n_in`` out-leaves and ``n_in`` in-leaves."""
    if not 0 < n_in < delta:
        raise ValueError("a mixed star needs both in- and out-leaves")
    edges = [(0, i) for i in range(1, delta - n_in + 1)]
    edges += [(i, 0) for i in range(delta - n_in + 1, delta + 1)]
    return Digraph(delta + 1, edges)


def directed_cycle(k: int) -> Digraph:
    if k < 2:
        raise ValueError("cycles need k >= 2")
    return Digraph(k, [(i, (i + 1) % k) for i in range(k)])


def two_cycle() -> Digraph:
    return directed_cycle(2)


def single_edge() -> Digraph:
    return Digraph(2, [(0, 1)])


def hub_example(k: int = 3) -> Digraph:
    """Core ``0..k-1`` all pointing to ``u1 = k``; ``k+1..2k`` point back into the core.

    The max-degree core is the left side (degree ``k+1``); ``a_S = A_S = 1``
    and ``b_S = |S|`` for every nonempty ``S``.
    """
    left = range(k)
    edges = [(v, k) for v in left]
    edges += [(u, v) for u in range(k + 1, 2 * k + 1) for v in left]
    return Digraph(2 * k + 1, edges)


def gap_example(k: int = 5) -> Digraph:
    """Core ``v_1..v_{k+1}`` (0..k) and ``T = u_1..u_{k+2}`` (k+1..2k+2).

    ``v_1..v_k`` each send one edge to ``u_1``; ``v_{k+1}`` sends edges to
    ``u_2`` and ``u_3``. Every other core/T pair carries an edge from T into
    the core, which gives all core vertices degree ``k+2``.
    """
    left = list(range(k + 1))
    right = list(range(k + 1, 2 * k + 3))
    u1, u2, u3 = right[0], right[1], right[2]
    solid = {(v, u1) for v in left[:k]} | {(left[k], u2), (left[k], u3)}
    dotted = {(u, v) for v in left for u in right if (v, u) not in solid}
    return Digraph(2 * k + 3, solid | dotted)


BUILTIN = {
    "triangle-transitive": triangle_transitive,
    "triangle-cyclic": triangle_cyclic,
    "out-star": out_star,
    "in-star": in_star,
    "mixed-star": mixed_star,
    "two-cycle": two_cycle,
    "single-edge": single_edge,
    "cycle-3": lambda: directed_cycle(3),
    "cycle-4": lambda: directed_cycle(4),
    "cycle-5": lambda: directed_cycle(5),
    "cycle-6": lambda: directed_cycle(6),
    "hub-k3": lambda: hub_example(3),
    "gap-k3": lambda: gap_example(3),
    "gap-k5": lambda: gap_example(5),
}
