import itertools

import pytest
from hypothesis import given, settings, strategies as st

from uptail import catalog
from uptail.digraph import (
    CoreTooLargeError,
    Digraph,
    DuplicateEdgeError,
    MalformedLineError,
    SelfLoopError,
    VertexRangeError,
    brute_force_independent_sets,
    classify,
    degrees,
    enumerate_independent_sets,
    independent_sets,
    max_degree_core,
    neighborhood_profile,
    parse_digraph,
    serialize_digraph,
    set_profile,
)

from corpus import builtin_corpus, random_corpus


@st.composite
def digraphs(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Digraph(n, edges)


# -- parsing -----------------------------------------------------------------

def test_parse_roundtrip_with_comments():
    text = "# a triangle\n3 3\n1 0\n1 2  # B->C\n\n2 0\n"
    D = parse_digraph(text)
    assert D == catalog.triangle_transitive()
    assert parse_digraph(serialize_digraph(D)) == D


@pytest.mark.parametrize("text, exc, line", [
    ("3 2\n0 1\n1 1\n", SelfLoopError, 3),
    ("3 2\n0 1\n0 3\n", VertexRangeError, 3),
    ("3 2\n0 1\n0 1\n", DuplicateEdgeError, 3),
    ("3 2\n0 1\n1\n", MalformedLineError, 3),
    ("3 2\n0 1\n", MalformedLineError, None),
    ("", MalformedLineError, None),
    ("2 1\n0 -1\n", VertexRangeError, 2),
])
def test_parse_errors(text, exc, line):
    with pytest.raises(exc) as info:
        parse_digraph(text)
    if line is not None:
        assert info.value.line == line


def test_two_cycle_is_not_a_duplicate():
    D = parse_digraph("2 2\n0 1\n1 0\n")
    assert D.m == 2 and not classify(D).oriented


@given(digraphs())
@settings(max_examples=60, deadline=None)
def test_serialize_roundtrip(D):
    assert parse_digraph(serialize_digraph(D)) == D


# -- degrees and the core ----------------------------------------------------

def test_degrees_of_mixed_star():
    rec = degrees(catalog.mixed_star(3, 1))
    assert rec.max_degree == 3
    assert rec.out_deg[0] == 2 and rec.in_deg[0] == 1
    assert rec.deg[1:] == (1, 1, 1)


def test_core_and_sets_of_triangle():
    D = catalog.triangle_transitive()
    core, adj = max_degree_core(D)
    assert core == (0, 1, 2)
    # the core is a triangle, so only singletons are independent
    assert independent_sets(D) == [(), (0,), (1,), (2,)]


def test_star_core_is_the_center():
    assert independent_sets(catalog.out_star(3)) == [(), (0,)]


def test_gap_example_core_is_independent():
    D = catalog.gap_example(5)
    core, _ = max_degree_core(D)
    assert core == tuple(range(6))
    assert len(independent_sets(D)) == 2 ** 6
    assert set(degrees(D).deg[:6]) == {7}


def test_core_cap():
    D = Digraph(30, [])
    with pytest.raises(CoreTooLargeError):
        independent_sets(D, cap=26)


@given(digraphs())
@settings(max_examples=120, deadline=None)
def test_independent_sets_match_brute_force(D):
    assert independent_sets(D) == brute_force_independent_sets(D)


def test_independent_sets_match_brute_force_on_corpus():
    for D in random_corpus(100, seed=11):
        assert independent_sets(D) == brute_force_independent_sets(D)


def test_enumeration_of_edgeless_core_counts_all_subsets():
    core = tuple(range(5))
    adj = {v: frozenset() for v in core}
    sets = enumerate_independent_sets(core, adj)
    assert len(sets) == 32 and sets[0] == ()


# -- neighborhoods and profiles ------------------------------------------------

@given(digraphs())
@settings(max_examples=80, deadline=None)
def test_profile_invariants(D):
    rec = degrees(D)
    for S in independent_sets(D):
        nb = neighborhood_profile(D, S)
        assert nb.n_all == nb.n_plus | nb.n_minus
        assert nb.n_pm == nb.n_plus & nb.n_minus
        assert nb.n_plus0 == nb.n_plus - nb.n_minus
        assert nb.n_minus0 == nb.n_minus - nb.n_plus
        for part in (nb.n_plus, nb.n_minus, nb.n_all):
            assert not part & set(S)
        prof = set_profile(D, S, rec)
        assert prof.v_plus + prof.v_minus + prof.v_pm == len(S)
        assert prof.A == prof.n_plus0 + prof.n_pm
        assert prof.B == prof.n_minus0 + prof.n_pm


def test_profile_of_transitive_triangle():
    D = catalog.triangle_transitive()
    # B = 1 is a source, A = 0 a sink, C = 2 has both
    assert set_profile(D, (1,)).as_dict() == {
        "S": [1], "v_plus": 1, "v_minus": 0, "v_pm": 0, "A": 2, "B": 0,
        "n_plus0": 2, "n_minus0": 0, "n_pm": 0, "a": None, "b": None}
    p0 = set_profile(D, (0,))
    assert (p0.v_minus, p0.A, p0.B) == (1, 0, 2)
    p2 = set_profile(D, (2,))
    assert (p2.v_pm, p2.A, p2.B) == (1, 1, 1)


def test_profile_of_two_cycle():
    p = set_profile(catalog.two_cycle(), (0,))
    assert (p.v_pm, p.A, p.B, p.n_pm, p.n_plus0, p.n_minus0) == (1, 1, 1, 1, 0, 0)


# -- classification -----------------------------------------------------------

def test_classification_of_builtins():
    flags = {name: classify(D) for name, D in builtin_corpus().items()}
    assert flags["triangle-transitive"].oriented and flags["triangle-transitive"].regular
    assert not flags["triangle-transitive"].balanced_at_max
    assert flags["triangle-cyclic"].balanced and flags["triangle-cyclic"].is_directed_cycle
    assert not flags["two-cycle"].oriented and flags["two-cycle"].balanced
    for name in ("out-star", "in-star", "mixed-star"):
        assert flags[name].is_star and flags[name].bipartite
    assert flags["mixed-star"].balanced_at_max is False
    assert flags["cycle-4"].bipartite and not flags["cycle-5"].bipartite
    assert flags["gap-k5"].connected and flags["gap-k5"].oriented
    assert not flags["hub-k3"].regular


def test_star_flag_needs_degree_two():
    assert not classify(catalog.single_edge()).is_star


def test_disconnected():
    D = Digraph(4, [(0, 1), (2, 3)])
    assert not classify(D).connected


def test_brute_force_oracle_is_independent_of_core_code():
    # the oracle on a hand-checked case: a directed 4-cycle, whose core is all of it
    D = Digraph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    sets = brute_force_independent_sets(D)
    expected = [()] + [(v,) for v in range(4)] + [(0, 2), (1, 3)]
    assert sorted(sets) == sorted(expected)
    for S in sets:
        for u, v in itertools.combinations(S, 2):
            assert not D.adjacent(u, v)
