"""Exact ground-truth search for alternating paths and cycles.

Everything here is exhaustive backtracking over partial alternating
sequences, with adjacency held as bitmask ints. Because directions must
alternate, a partial path forces which adjacency direction can extend it,
which halves the branching factor compared to generic longest-path search.

These searches are the reference the heuristic engine is checked against, so
they favor obvious correctness over cleverness: the only pruning is the
count-based bound (current length plus vertices remaining cannot beat the
best already found) and early exit for fixed-length queries.

Determinism contract: starts are tried in increasing vertex order and
candidates in increasing bit order, so the returned witness is the
lexicographically least vertex sequence among those of maximum length.
"""

from __future__ import annotations

from typing import Iterator

from .graphs import OrientedGraph, enumerate_pairs
from .witnesses import (
    AnticycleWitness,
    AntipathWitness,
    validate_antipath,
    validate_anticycle,
)


class CapExceededError(ValueError):
    """Enumeration request beyond the configured vertex-count cap."""


def longest_antipath(g: OrientedGraph) -> AntipathWitness | None:
    """A maximum-length alternating path, or None iff the graph is arcless."""
    n = g.n
    if g.arc_count == 0:
        return None
    out_m, in_m = g.adjacency_masks()
    best_len = 0
    best_seq: tuple[int, ...] = ()
    seq = [0] * n

    def extend(u: int, depth: int, visited: int, forward_next: bool) -> None:
        nonlocal best_len, best_seq
        if (depth - 1) + (n - depth) <= best_len:
            return
        cand = (out_m[u] if forward_next else in_m[u]) & ~visited
        while cand:
            bit = cand & -cand
            cand ^= bit
            w = bit.bit_length() - 1
            seq[depth] = w
            if depth > best_len:
                best_len = depth
                best_seq = tuple(seq[: depth + 1])
            extend(w, depth + 1, visited | bit, not forward_next)

    for v0 in range(n):
        if best_len >= n - 1:
            break
        seq[0] = v0
        cand = out_m[v0] | in_m[v0]
        while cand:
            bit = cand & -cand
            cand ^= bit
            w = bit.bit_length() - 1
            forward = bool(out_m[v0] & bit)
            seq[1] = w
            if best_len == 0:
                best_len = 1
                best_seq = (v0, w)
            extend(w, 2, (1 << v0) | bit, not forward)

    return validate_antipath(g, best_seq)


def all_longest_antipaths(g: OrientedGraph) -> tuple[int, list[tuple[int, ...]]]:
    """Every maximum-length traversal, as raw sequences.

    Each path appears once per traversal direction (twice in total).
    Unpruned full enumeration: intended for small graphs (n <= 8 or so).
    Returns (0, []) for an arcless graph.
    """
    n = g.n
    if g.arc_count == 0:
        return 0, []
    out_m, in_m = g.adjacency_masks()
    best_len = 1
    found: list[tuple[int, ...]] = []
    seq = [0] * n

    def extend(u: int, depth: int, visited: int, forward_next: bool) -> None:
        nonlocal best_len, found
        cand = (out_m[u] if forward_next else in_m[u]) & ~visited
        while cand:
            bit = cand & -cand
            cand ^= bit
            w = bit.bit_length() - 1
            seq[depth] = w
            if depth > best_len:
                best_len = depth
                found = [tuple(seq[: depth + 1])]
            elif depth == best_len:
                found.append(tuple(seq[: depth + 1]))
            extend(w, depth + 1, visited | bit, not forward_next)

    for v0 in range(n):
        seq[0] = v0
        cand = out_m[v0] | in_m[v0]
        while cand:
            bit = cand & -cand
            cand ^= bit
            w = bit.bit_length() - 1
            forward = bool(out_m[v0] & bit)
            seq[1] = w
            if best_len == 1:
                found.append((v0, w))
            extend(w, 2, (1 << v0) | bit, not forward)

    return best_len, found


def contains_antipath_of_length(
    g: OrientedGraph, k: int, start_forward: bool | None = None
) -> AntipathWitness | None:
    """A witness of exact length k, or None if no such antipath exists.

    For even k the two shapes are genuinely different; pass start_forward to
    pin one (True: first arc leaves the first vertex, so both endpoints emit).
    With start_forward omitted, both first-arc directions are tried, so a None
    answer means neither shape is present.
    """
    if k < 1:
        raise ValueError(f"length must be >= 1, got {k}")
    n = g.n
    if k > n - 1 or g.arc_count == 0:
        return None
    out_m, in_m = g.adjacency_masks()
    seq = [0] * (k + 1)

    def extend(u: int, depth: int, visited: int, forward_next: bool) -> bool:
        cand = (out_m[u] if forward_next else in_m[u]) & ~visited
        while cand:
            bit = cand & -cand
            cand ^= bit
            w = bit.bit_length() - 1
            seq[depth] = w
            if depth == k:
                return True
            if extend(w, depth + 1, visited | bit, not forward_next):
                return True
        return False

    for v0 in range(n):
        seq[0] = v0
        if start_forward is None:
            cand = out_m[v0] | in_m[v0]
        elif start_forward:
            cand = out_m[v0]
        else:
            cand = in_m[v0]
        while cand:
            bit = cand & -cand
            cand ^= bit
            w = bit.bit_length() - 1
            forward = bool(out_m[v0] & bit)
            seq[1] = w
            if k == 1 or extend(w, 2, (1 << v0) | bit, not forward):
                return validate_antipath(g, tuple(seq[: k + 1]))
    return None


def longest_anticycle(g: OrientedGraph) -> AnticycleWitness | None:
    """A maximum-length alternating cycle, or None if there is none.

    Cycles are canonicalized by starting at their smallest vertex; the DFS
    only ever walks to vertices above the start.
    """
    best = _anticycle_search(g, target=None)
    return validate_anticycle(g, best) if best else None


def has_anticycle_of_length(g: OrientedGraph, length: int) -> AnticycleWitness | None:
    """A witness of exactly this length, or None."""
    if length < 4 or length % 2 != 0:
        raise ValueError(f"anticycle length must be even and >= 4, got {length}")
    best = _anticycle_search(g, target=length)
    return validate_anticycle(g, best) if best else None


def anticycle_lengths(g: OrientedGraph) -> set[int]:
    """All lengths c for which g contains an alternating cycle of length c."""
    return {c for c in range(4, g.n + 1, 2) if _anticycle_search(g, target=c)}


def _anticycle_search(g: OrientedGraph, target: int | None) -> tuple[int, ...] | None:
    """Shared walker: longest cycle if target is None, else exact length."""
    n = g.n
    if n < 4 or g.arc_count == 0:
        return None
    out_m, in_m = g.adjacency_masks()
    best_len = 3 if target is None else target - 1
    best_seq: tuple[int, ...] | None = None
    seq = [0] * n

    def extend(u: int, depth: int, visited: int, source_now: bool, above: int) -> bool:
        # depth = vertices placed; u = seq[depth-1]; source_now = role of u
        nonlocal best_len, best_seq
        start = seq[0]
        # close the cycle: needs an even vertex count >= 4 and the wrap arc
        if depth >= 4 and depth % 2 == 0 and depth > best_len:
            closed = g.has_arc(u, start) if source_now else g.has_arc(start, u)
            if closed:
                best_len = depth
                best_seq = tuple(seq[:depth])
                if target is not None:
                    return True
        remaining = (above & ~visited).bit_count()
        if depth + remaining <= best_len:
            return False
        if target is not None and depth >= target:
            return False
        cand = (out_m[u] if source_now else in_m[u]) & ~visited & above
        while cand:
            bit = cand & -cand
            cand ^= bit
            w = bit.bit_length() - 1
            seq[depth] = w
            if extend(w, depth + 1, visited | bit, not source_now, above):
                return True
        return False

    full = (1 << n) - 1
    for s in range(n - 3):
        above = full & ~((1 << (s + 1)) - 1)
        seq[0] = s
        for source_first in (True, False):
            cand = (out_m[s] if source_first else in_m[s]) & above
            while cand:
                bit = cand & -cand
                cand ^= bit
                w = bit.bit_length() - 1
                seq[1] = w
                if extend(w, 2, (1 << s) | bit, not source_first, above):
                    return best_seq
    return best_seq


def count_oriented_graphs(n: int) -> int:
    """3^(n choose 2): each unordered pair is absent, forward, or backward."""
    return 3 ** (n * (n - 1) // 2)


def graph_from_code(n: int, code: int) -> OrientedGraph:
    """Decode an enumeration index into its labeled oriented graph.

    The code is read in base 3, one trit per unordered pair in lexicographic
    order: 0 no arc, 1 arc low -> high, 2 arc high -> low.
    """
    g = OrientedGraph(n)
    t = code
    for u, v in enumerate_pairs(n):
        r = t % 3
        t //= 3
        if r == 1:
            g._out[u].add(v)
            g._in[v].add(u)
            g._arc_count += 1
        elif r == 2:
            g._out[v].add(u)
            g._in[u].add(v)
            g._arc_count += 1
    return g


def enumerate_oriented_graphs(n: int, cap: int = 5) -> Iterator[OrientedGraph]:
    """All labeled oriented graphs on n vertices, exactly once each.

    No isomorphism reduction: 3^(n choose 2) graphs, which is desk-scale for
    n <= 5. Larger n raises CapExceededError unless the cap is raised
    explicitly.
    """
    if n > cap:
        raise CapExceededError(f"n={n} exceeds enumeration cap {cap}")
    for code in range(count_oriented_graphs(n)):
        yield graph_from_code(n, code)
