import random

import pytest
from hypothesis import given, settings

from antipaths import (
    CapExceededError,
    OrientedGraph,
    anticycle_lengths,
    contains_antipath_of_length,
    count_oriented_graphs,
    cycle_blowup,
    enumerate_oriented_graphs,
    graph_from_code,
    graph_hash,
    has_anticycle_of_length,
    longest_antipath,
    longest_anticycle,
    all_longest_antipaths,
    random_oriented_graph,
    relabel,
    validate_antipath,
    validate_anticycle,
)

from graphgen import (
    brute_has_antipath,
    brute_longest_antipath_len,
    brute_longest_anticycle_len,
    oriented_graphs,
)


def test_single_arc_longest_is_one():
    g = OrientedGraph.from_arcs(2, [(0, 1)])
    w = longest_antipath(g)
    assert w is not None and w.length == 1


def test_directed_cycles_have_no_length_two_antipath():
    # every vertex has one in and one out, so no two arcs can alternate
    assert longest_antipath(cycle_blowup(3, 1)).length == 1
    assert longest_antipath(cycle_blowup(4, 1)).length == 1


def test_blowup_longest_is_three():
    w = longest_antipath(cycle_blowup(3, 2))
    assert w.length == 3
    assert w.vertices == (0, 2, 1, 3)  # lexicographically least witness


def test_arcless_graph_has_no_antipath():
    assert longest_antipath(OrientedGraph(4)) is None


@given(oriented_graphs(max_n=6))
def test_longest_matches_brute_force(g):
    w = longest_antipath(g)
    got = 0 if w is None else w.length
    assert got == brute_longest_antipath_len(g)
    if w is not None:
        validate_antipath(g, w.vertices)


@given(oriented_graphs(max_n=6))
@settings(max_examples=60)
def test_contains_matches_brute_force(g):
    for k in (1, 2, 3, 4):
        for flag in (None, True, False):
            wit = contains_antipath_of_length(g, k, flag)
            assert (wit is not None) == brute_has_antipath(g, k, flag)
            if wit is not None:
                assert wit.length == k
                if flag is not None:
                    assert wit.start_forward == flag


def test_contains_blowup_examples():
    g = cycle_blowup(3, 2)
    assert contains_antipath_of_length(g, 4) is None
    w = contains_antipath_of_length(g, 3)
    assert w is not None and w.length == 3


def test_contains_length_one_returns_least_arc():
    g = OrientedGraph.from_arcs(4, [(3, 2), (1, 0)])
    w = contains_antipath_of_length(g, 1)
    assert w.vertices == (0, 1)  # traversed from the smaller endpoint


def test_longest_anticycle_fixture():
    g = OrientedGraph.from_arcs(4, [(0, 1), (2, 1), (2, 3), (0, 3)])
    w = longest_anticycle(g)
    assert w is not None and w.length == 4
    assert longest_anticycle(OrientedGraph(5)) is None


def test_blowup_anticycle_is_four():
    g = cycle_blowup(3, 2)
    w = longest_anticycle(g)
    assert w.length == 4
    assert anticycle_lengths(g) == {4}
    assert has_anticycle_of_length(g, 6) is None


@given(oriented_graphs(max_n=6))
@settings(max_examples=60)
def test_anticycle_matches_brute_force(g):
    w = longest_anticycle(g)
    got = 0 if w is None else w.length
    assert got == brute_longest_anticycle_len(g)
    if w is not None:
        validate_anticycle(g, w.vertices)


def test_enumeration_counts():
    assert count_oriented_graphs(2) == 3
    assert count_oriented_graphs(4) == 729
    assert count_oriented_graphs(5) == 59049
    graphs = list(enumerate_oriented_graphs(2))
    assert len(graphs) == 3
    assert len({graph_hash(g) for g in graphs}) == 3


def test_enumeration_is_exhaustive_and_distinct_n3():
    hashes = {graph_hash(g) for g in enumerate_oriented_graphs(3)}
    assert len(hashes) == 27


def test_enumeration_cap():
    with pytest.raises(CapExceededError):
        next(enumerate_oriented_graphs(6))
    # explicit cap raise is allowed
    g = next(enumerate_oriented_graphs(6, cap=6))
    assert g.n == 6


def test_graph_from_code_roundtrip_spotcheck():
    # code 1 sets the first pair (0,1) forward; code 2 backward
    assert graph_from_code(3, 1).arcs() == [(0, 1)]
    assert graph_from_code(3, 2).arcs() == [(1, 0)]


def test_longest_invariant_under_relabeling_and_reversal():
    rng = random.Random(1)
    for seed in range(30):
        g = random_oriented_graph(7, 0.5, seed)
        base = longest_antipath(g)
        base_len = 0 if base is None else base.length
        perm = list(range(7))
        rng.shuffle(perm)
        for h in (relabel(g, perm), g.reverse()):
            w = longest_antipath(h)
            assert (0 if w is None else w.length) == base_len


def test_adding_arcs_never_shortens_longest():
    rng = random.Random(2)
    for seed in range(40):
        g = random_oriented_graph(6, 0.3, seed)
        before = longest_antipath(g)
        before_len = 0 if before is None else before.length
        free = [
            (u, v)
            for u in range(6)
            for v in range(6)
            if u != v and not g.has_arc(u, v) and not g.has_arc(v, u)
        ]
        if not free:
            continue
        u, v = free[rng.randrange(len(free))]
        g.add_arc(u, v)
        after = longest_antipath(g)
        assert after is not None and after.length >= before_len


def test_all_longest_returns_every_traversal():
    g = cycle_blowup(3, 2)
    m, traversals = all_longest_antipaths(g)
    assert m == 3
    assert (0, 2, 1, 3) in traversals
    # every path appears under both traversal directions
    assert all(tuple(reversed(t)) in traversals for t in traversals)
    for t in traversals:
        assert validate_antipath(g, t).length == 3


def test_all_longest_on_arcless():
    assert all_longest_antipaths(OrientedGraph(3)) == (0, [])
