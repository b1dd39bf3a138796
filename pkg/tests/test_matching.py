from fractions import Fraction

import networkx as nx
import pytest

from uptail import catalog
from uptail.digraph import Digraph, classify, independent_sets
from uptail.matching import (
    Arc,
    BipartiteWitness,
    NotSaturableError,
    WitnessError,
    brute_force_directional_bounds,
    directional_bounds,
    directional_tau,
    induced_bipartite,
    max_fractional_matching,
    max_fractional_matching_value,
    max_matching,
    min_vertex_cover,
)
from uptail.variational import profiles_for

from corpus import builtin_corpus, random_corpus


def witnesses(graphs):
    for D in graphs:
        for S in independent_sets(D):
            if S:
                yield D, S, induced_bipartite(D, S)


def nx_matching_number(F: BipartiteWitness) -> int:
    G = nx.Graph()
    left = [("s", v) for v in F.s_side]
    G.add_nodes_from(left)
    G.add_nodes_from(("t", v) for v in F.t_side)
    G.add_edges_from((("s", s), ("t", t)) for s, t in F.pairs())
    return len(nx.bipartite.hopcroft_karp_matching(G, top_nodes=left)) // 2


def test_induced_witness_of_triangle():
    F = induced_bipartite(catalog.triangle_transitive(), (2,))
    assert F.s_side == (2,) and F.t_side == (0, 1)
    assert set(F.arcs) == {Arc(2, 0, "out"), Arc(2, 1, "in")}


def test_witness_rejects_bad_arcs():
    with pytest.raises(WitnessError):
        BipartiteWitness((0,), (0, 1), ())
    with pytest.raises(WitnessError):
        BipartiteWitness((0,), (1,), (Arc(1, 0, "out"),))
    with pytest.raises(WitnessError):
        induced_bipartite(catalog.triangle_transitive(), ())


def test_kuhn_matching_matches_networkx_on_corpus():
    for _, _, F in witnesses(random_corpus(120, seed=3)):
        assert max_matching(F) == nx_matching_number(F)


def test_koenig_chain_is_exact():
    graphs = list(builtin_corpus().values()) + random_corpus(120, seed=4)
    for _, _, F in witnesses(graphs):
        tau, cover = min_vertex_cover(F)
        assert all(s in cover or t in cover for s, t in F.pairs())
        frac = max_fractional_matching_value(F)
        assert isinstance(frac, Fraction)
        assert frac == max_matching(F) == tau


def test_fractional_matching_is_feasible():
    for _, _, F in witnesses(random_corpus(40, seed=5)):
        M = max_fractional_matching(F)
        for v in F.s_side + F.t_side:
            assert M.load(v) <= 1
        assert all(w >= 0 for w in M.weights)


def test_two_cycle_pair_collapses():
    F = induced_bipartite(catalog.two_cycle(), (0,))
    assert F.pairs() == [(0, 1)]
    assert len(F.arcs) == 2
    assert max_matching(F) == 1 == max_fractional_matching_value(F)
    db = directional_bounds(F)
    assert (db.a, db.b) == (1, 1)


def test_directional_bounds_on_builtins():
    D = catalog.hub_example(3)
    for p in profiles_for(D):
        if p.S:
            assert (p.a, p.A, p.b) == (1, 1, len(p.S))
    tri = {p.S: (p.a, p.b) for p in profiles_for(catalog.triangle_transitive())}
    assert tri == {(): (0, 0), (0,): (0, 1), (1,): (1, 0), (2,): (1, 1)}


def test_all_out_perfect_matching():
    F = BipartiteWitness.from_edges((0, 1), (2, 3), [(0, 2), (1, 3)])
    db = directional_bounds(F)
    assert (db.a, db.b) == (2, 0)


def test_no_out_arcs_gives_zero():
    F = BipartiteWitness.from_edges((0,), (1, 2), [(1, 0), (2, 0)])
    assert directional_bounds(F).a == 0


def test_not_saturable():
    # two S vertices sharing their only neighbour
    F = BipartiteWitness.from_edges((0, 1), (2,), [(0, 2), (1, 2)])
    with pytest.raises(NotSaturableError):
        directional_bounds(F)
    with pytest.raises(NotSaturableError):
        brute_force_directional_bounds(F)


def test_directional_bounds_equal_brute_force():
    graphs = list(builtin_corpus().values()) + random_corpus(200, seed=6)
    checked = 0
    for _, _, F in witnesses(graphs):
        if len(F.arcs) > 24:
            continue
        fast, slow = directional_bounds(F), brute_force_directional_bounds(F)
        assert (fast.a, fast.b) == (slow.a, slow.b)
        assert fast.a.denominator == 1 and fast.b.denominator == 1
        checked += 1
    assert checked > 300


def test_sandwich_per_set():
    for D in list(builtin_corpus().values()) + random_corpus(150, seed=8):
        for p in profiles_for(D):
            if not p.S:
                continue
            F = induced_bipartite(D, p.S)
            tau_out, tau_in = directional_tau(F, "out"), directional_tau(F, "in")
            assert p.v_plus <= p.a <= tau_out <= min(p.v_plus + p.v_pm, p.A)
            assert p.v_minus <= p.b <= tau_in <= min(p.v_minus + p.v_pm, p.B)
            assert p.a <= p.size and p.b <= p.size


def test_balanced_at_max_gives_half_bounds():
    graphs = [D for D in random_corpus(300, seed=9) if classify(D).balanced_at_max]
    graphs += [catalog.directed_cycle(k) for k in range(2, 7)]
    assert len(graphs) > 5
    for D in graphs:
        for p in profiles_for(D):
            assert 2 * p.a >= p.size and 2 * p.b >= p.size


def test_brute_force_cap():
    n = 14
    edges = [(0, t) for t in range(1, n)] + [(t, 0) for t in range(1, n)]
    F = induced_bipartite(Digraph(n, edges), (0,))
    with pytest.raises(ValueError):
        brute_force_directional_bounds(F)
