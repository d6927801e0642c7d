"""Instance generators and the degree-threshold arithmetic.

Random generation uses Python's random.Random (MT19937), which is stable
across platforms and versions, with a documented draw order, so any (seed,
parameters) pair reproduces the same graph everywhere. See README for the
exact draw sequence.
"""

from __future__ import annotations

import math
import random

from .graphs import OrientedGraph, enumerate_pairs


class AttemptsExhaustedError(RuntimeError):
    """Densification failed to reach the requested degree floor."""


def cycle_blowup(ell: int, b: int) -> OrientedGraph:
    """Blow-up of a directed ell-cycle with b independent vertices per blob.

    Blob j holds vertices [j*b, (j+1)*b); all b*b arcs run from blob j to
    blob j+1 (mod ell). Every vertex ends up with in- and out-degree exactly
    b, so both degree statistics equal b. The family is extremal: its longest
    alternating path stops one arc short of twice the blob size.
    """
    if ell < 3:
        raise ValueError(f"cycle length must be >= 3 (2 would create 2-cycles), got {ell}")
    if b < 1:
        raise ValueError(f"blob size must be >= 1, got {b}")
    g = OrientedGraph(ell * b)
    for j in range(ell):
        nxt = (j + 1) % ell
        for u in range(j * b, (j + 1) * b):
            for v in range(nxt * b, (nxt + 1) * b):
                g.add_arc(u, v)
    return g


def threshold(k: int) -> float:
    """The real degree bound (k - 1 + sqrt(k - 3)) / 2 for target length k."""
    if k < 4:
        raise ValueError(f"threshold is defined for k >= 4, got {k}")
    return (k - 1 + math.sqrt(k - 3)) / 2.0


def integer_threshold(k: int) -> int:
    """Smallest integer strictly above threshold(k), in exact arithmetic.

    d > (k - 1 + sqrt(k - 3)) / 2 is equivalent to t = 2d - k + 1 > 0 and
    t*t > k - 3, which avoids any floating-point edge case at perfect
    squares.
    """
    if k < 4:
        raise ValueError(f"threshold is defined for k >= 4, got {k}")
    d = (k - 1) // 2
    while True:
        t = 2 * d - k + 1
        if t > 0 and t * t > k - 3:
            return d
        d += 1


def random_oriented_graph(n: int, p: float, seed: int) -> OrientedGraph:
    """Each unordered pair gets an arc with probability p, orientation uniform.

    Draw order (the reproducibility contract): pairs (u, v) with u < v in
    lexicographic order; one float per pair decides presence, and a second
    float (drawn only when present) picks u->v on < 0.5, else v->u.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability must be in [0, 1], got {p}")
    rng = random.Random(seed)
    g = OrientedGraph(n)
    for u, v in enumerate_pairs(n):
        if rng.random() < p:
            if rng.random() < 0.5:
                g.add_arc(u, v)
            else:
                g.add_arc(v, u)
    return g


def random_with_min_pd(
    n: int, d: int, seed: int, max_attempts: int = 64
) -> OrientedGraph:
    """A random-looking graph whose every positive degree is at least d.

    Strategy: sample random_oriented_graph at escalating densities; then
    greedily repair, giving any vertex with 0 < out-degree < d extra out-arcs
    to uniformly chosen non-adjacent vertices (symmetrically for in-degree).
    Repair targets the positive-degree floor rather than the plain minimum
    degree, so zero-degree sides are left alone. Deterministic given seed.
    """
    if d < 1:
        raise ValueError(f"degree target must be >= 1, got {d}")
    if n < 2 * d + 1:
        raise ValueError(f"need n >= 2d+1 = {2 * d + 1} vertices, got {n}")
    rng = random.Random(seed)
    base_p = min(1.0, 2.0 * (d + 1) / (n - 1))
    for attempt in range(max_attempts):
        p = min(1.0, base_p + 0.05 * attempt)
        g = random_oriented_graph(n, p, rng.randrange(2**63))
        if _repair_pd(g, d, rng) and g.degree_profile().min_pseudo_semidegree >= d:
            return g
    raise AttemptsExhaustedError(
        f"could not reach positive-degree floor {d} on {n} vertices "
        f"in {max_attempts} attempts"
    )


def _repair_pd(g: OrientedGraph, d: int, rng: random.Random) -> bool:
    """Add arcs until no vertex has a positive degree below d. False if stuck."""
    while True:
        deficient = None
        for v in range(g.n):
            if 0 < g.out_degree(v) < d:
                deficient = (v, True)
                break
            if 0 < g.in_degree(v) < d:
                deficient = (v, False)
                break
        if deficient is None:
            return True
        v, out_side = deficient
        linked = g.out_neighbors(v) | g.in_neighbors(v)
        free = [w for w in range(g.n) if w != v and w not in linked]
        if not free:
            return False
        w = free[rng.randrange(len(free))]
        if out_side:
            g.add_arc(v, w)
        else:
            g.add_arc(w, v)
