"""Shared test helpers: graph strategies and independent brute-force oracles.

The brute-force functions deliberately share no code with the package's
search routines: they enumerate raw vertex permutations and push each through
the validators, so they can serve as ground truth for the searchers.
"""

from __future__ import annotations

import itertools

from hypothesis import strategies as st

from antipaths import (
    OrientedGraph,
    WitnessError,
    validate_anticycle,
    validate_antipath,
)
from antipaths.graphs import enumerate_pairs


def graph_from_trits(n: int, trits: list[int]) -> OrientedGraph:
    g = OrientedGraph(n)
    for (u, v), r in zip(enumerate_pairs(n), trits):
        if r == 1:
            g.add_arc(u, v)
        elif r == 2:
            g.add_arc(v, u)
    return g


@st.composite
def oriented_graphs(draw, min_n: int = 2, max_n: int = 6) -> OrientedGraph:
    n = draw(st.integers(min_n, max_n))
    npairs = n * (n - 1) // 2
    trits = draw(st.lists(st.integers(0, 2), min_size=npairs, max_size=npairs))
    return graph_from_trits(n, trits)


def brute_longest_antipath_len(g: OrientedGraph) -> int:
    """Maximum alternating-path length by checking every vertex permutation."""
    best = 0
    for size in range(2, g.n + 1):
        for seq in itertools.permutations(range(g.n), size):
            try:
                validate_antipath(g, seq)
            except WitnessError:
                continue
            best = max(best, size - 1)
    return best


def brute_has_antipath(g: OrientedGraph, k: int, start_forward: bool | None = None) -> bool:
    for seq in itertools.permutations(range(g.n), k + 1):
        try:
            wit = validate_antipath(g, seq)
        except WitnessError:
            continue
        if start_forward is None or wit.start_forward == start_forward:
            return True
    return False


def brute_longest_anticycle_len(g: OrientedGraph) -> int:
    """Maximum alternating-cycle length over raw permutations; 0 if none."""
    best = 0
    for size in range(4, g.n + 1, 2):
        for seq in itertools.permutations(range(g.n), size):
            try:
                validate_anticycle(g, seq)
            except WitnessError:
                continue
            best = max(best, size)
    return best
