"""Path-surgery moves on longest alternating paths, and the maximality audit.

All machinery here operates on an odd-length alternating path written so that
its first arc leaves the first vertex. In that normal form the vertices at
even positions all emit and the vertices at odd positions all absorb, so every
path arc runs from the even side to the odd side, and the moves below preserve
that form:

  * rotations reorder the traversal using a chord from an endpoint, keeping
    the vertex set fixed;
  * endpoint swaps exchange one endpoint for an off-path neighbor of the
    second vertex, keeping the length fixed;
  * the two-vertex insertions splice a pair of head candidates into the path
    around an even "pivot" position, lengthening it by exactly one arc.

On a genuinely longest path no lengthening move can exist. The audit walks
every insertion precondition and several arc-counting bounds; anything it
finds is reported as data (with the explicit longer path it constructs), not
raised, because a violation only means the input path was not maximal.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum

from .graphs import OrientedGraph
from .witnesses import AntipathWitness, validate_antipath

DEFAULT_CLOSURE_CAP = 1_000_000


class EvenLengthPathError(ValueError):
    """The rotation machinery is defined only for odd-length paths."""


class MissingArcError(ValueError):
    """A move's precondition arc is absent; carries the arc endpoints."""

    def __init__(self, u: int, v: int):
        super().__init__(f"missing arc ({u}, {v})")
        self.u = u
        self.v = v


class MoveKind(Enum):
    SAME_LENGTH = "same-length"
    EXTENSION = "length-plus-one"
    NO_MOVE = "no-move"


@dataclass(frozen=True)
class MoveOutcome:
    kind: MoveKind
    result: AntipathWitness


@dataclass(frozen=True)
class RotationState:
    """A normalized path plus every derived set the moves and audit consume.

    head_candidates are the in-neighbors of the second vertex lying outside
    the path's tail (positions 2..m); each of them can replace the first
    vertex. seconds / penultimates are the vertices achievable in those two
    positions across the whole rotation closure of the path.
    """

    host: OrientedGraph
    path: AntipathWitness
    even_positions: frozenset[int]
    odd_positions: frozenset[int]
    seconds: frozenset[int]
    penultimates: frozenset[int]
    head_candidates: frozenset[int]
    closure_size: int
    closure_truncated: bool

    @property
    def length(self) -> int:
        return self.path.length


def build_state(
    g: OrientedGraph, path: AntipathWitness, closure_cap: int = DEFAULT_CLOSURE_CAP
) -> RotationState:
    """Validate, normalize to a forward first arc, and derive all sets.

    The witness is revalidated against the host (directions are never taken
    on trust) and reversed if its first arc points backward; for odd lengths
    the reversal always yields the forward form. Even lengths are rejected.
    """
    wit = validate_antipath(g, path.vertices)
    if wit.length % 2 == 0:
        raise EvenLengthPathError(f"length {wit.length} is even")
    if not wit.start_forward:
        wit = wit.reversed_()
    seq = wit.vertices
    evens = frozenset(seq[0::2])
    odds = frozenset(seq[1::2])
    head = frozenset(g.in_neighbors(seq[1]) - set(seq[2:]))
    seconds, penultimates, size, truncated = _closure(g, seq, closure_cap)
    assert seconds <= odds and penultimates <= evens
    assert seq[1] in seconds and seq[-2] in penultimates and seq[0] in head
    return RotationState(
        host=g,
        path=wit,
        even_positions=evens,
        odd_positions=odds,
        seconds=frozenset(seconds),
        penultimates=frozenset(penultimates),
        head_candidates=head,
        closure_size=size,
        closure_truncated=truncated,
    )


# ---------------------------------------------------------------------------
# rotations


def _rotate_start_seq(seq: tuple[int, ...], i: int) -> tuple[int, ...]:
    # chord (first, seq[2i+1]): reverse the prefix up to position 2i
    return tuple(reversed(seq[: 2 * i + 1])) + seq[2 * i + 1 :]


def _rotate_end_seq(seq: tuple[int, ...], i: int) -> tuple[int, ...]:
    # chord (seq[2i], last): reverse the suffix after position 2i
    return seq[: 2 * i + 1] + tuple(reversed(seq[2 * i + 1 :]))


def rotate_start(st: RotationState, i: int) -> MoveOutcome:
    """Same-length reorder using the chord from the first vertex to seq[2i+1].

    The new traversal is seq[2i], ..., seq[0], seq[2i+1], ..., seq[m]: the
    vertex set is unchanged and the second vertex becomes seq[2i-1].
    """
    m = st.path.length
    if not 1 <= i <= (m - 1) // 2:
        raise ValueError(f"need 0 < i < m/2, got i={i} for m={m}")
    seq = st.path.vertices
    if not st.host.has_arc(seq[0], seq[2 * i + 1]):
        raise MissingArcError(seq[0], seq[2 * i + 1])
    return MoveOutcome(
        MoveKind.SAME_LENGTH, validate_antipath(st.host, _rotate_start_seq(seq, i))
    )


def rotate_end(st: RotationState, i: int) -> MoveOutcome:
    """Mirror rotation using the chord from seq[2i] to the last vertex.

    i ranges over 0..(m-3)/2; i = (m-1)/2 would use the path's own last arc
    and reproduce the input, so it is excluded.
    """
    m = st.path.length
    if not 0 <= i <= (m - 3) // 2:
        raise ValueError(f"need 0 <= i <= (m-3)/2, got i={i} for m={m}")
    seq = st.path.vertices
    if not st.host.has_arc(seq[2 * i], seq[m]):
        raise MissingArcError(seq[2 * i], seq[m])
    return MoveOutcome(
        MoveKind.SAME_LENGTH, validate_antipath(st.host, _rotate_end_seq(seq, i))
    )


def _rotation_successors(g: OrientedGraph, seq: tuple[int, ...]) -> list[tuple[int, ...]]:
    m = len(seq) - 1
    first, last = seq[0], seq[m]
    succ = []
    for i in range(1, (m - 1) // 2 + 1):
        if g.has_arc(first, seq[2 * i + 1]):
            succ.append(_rotate_start_seq(seq, i))
    for i in range((m - 1) // 2):
        if g.has_arc(seq[2 * i], last):
            succ.append(_rotate_end_seq(seq, i))
    return succ


def _closure(
    g: OrientedGraph, seq: tuple[int, ...], cap: int
) -> tuple[set[int], set[int], int, bool]:
    """Breadth-first closure of the two rotations, deduplicated by sequence.

    Returns (achievable seconds, achievable penultimates, number of distinct
    paths reached, truncation flag). The closure is finite but can in
    principle be large; when the cap is hit the partial answer is returned
    with truncated=True rather than silently wrong.
    """
    seen: set[tuple[int, ...]] = {seq}
    queue: deque[tuple[int, ...]] = deque([seq])
    truncated = False
    while queue and not truncated:
        cur = queue.popleft()
        for nxt in _rotation_successors(g, cur):
            if nxt in seen:
                continue
            if len(seen) >= cap:
                truncated = True
                break
            seen.add(nxt)
            queue.append(nxt)
    seconds = {s[1] for s in seen}
    penultimates = {s[-2] for s in seen}
    return seconds, penultimates, len(seen), truncated


def rotation_closure(st: RotationState) -> tuple[frozenset[int], frozenset[int]]:
    """The (seconds, penultimates) pair computed when the state was built."""
    return st.seconds, st.penultimates


def endpoint_chord_exists(st: RotationState) -> bool:
    """Is there an arc from the first vertex into the achievable penultimates,
    or from the achievable seconds into the last vertex?

    On a longest path this must hold whenever the positive-degree floor
    strictly exceeds half the target length; at exact equality there are
    counterexamples (the 3-cycle blow-up), so callers should require the
    strict hypothesis.
    """
    g = st.host
    first = st.path.vertices[0]
    last = st.path.vertices[-1]
    return any(g.has_arc(first, p) for p in st.penultimates) or any(
        g.has_arc(s, last) for s in st.seconds
    )


# ---------------------------------------------------------------------------
# endpoint swaps (same length, one endpoint exchanged)


def _swap_successors(g: OrientedGraph, seq: tuple[int, ...]) -> list[tuple[int, ...]]:
    m = len(seq) - 1
    v1, vm = seq[1], seq[m]
    on_path = set(seq)
    succ = []
    # tail push: with the chord (v1, last) present, v1 can become penultimate
    # and any off-path out-neighbor w of v1 the new tail
    if g.has_arc(v1, vm):
        for w in sorted(g.out_neighbors(v1) - on_path):
            succ.append(seq[2:] + (v1, w))
    # head replacement: any off-path in-neighbor of v1 can be the new head
    for w in sorted(g.in_neighbors(v1) - on_path):
        succ.append((w,) + seq[1:])
    return succ


def endpoint_swaps(st: RotationState) -> list[MoveOutcome]:
    """All same-length paths reachable by exchanging one endpoint.

    Two families: tail pushes (require the chord from the second vertex to
    the last) and head replacements (always available for off-path
    in-neighbors of the second vertex). Empty list when neither applies.
    """
    return [
        MoveOutcome(MoveKind.SAME_LENGTH, validate_antipath(st.host, s))
        for s in _swap_successors(st.host, st.path.vertices)
    ]


# ---------------------------------------------------------------------------
# two-vertex insertions (length + 1)


def _check_insertion_args(st: RotationState, v: int, w: int, i: int) -> None:
    m = st.path.length
    if not 1 <= i <= (m - 1) // 2:
        raise ValueError(f"need 0 < i < m/2, got i={i} for m={m}")
    if v == w:
        raise ValueError("need two distinct head candidates")
    if v not in st.head_candidates or w not in st.head_candidates:
        raise ValueError(f"{v} and {w} must both be head candidates")


def extend_via_pivot_chord(st: RotationState, v: int, w: int, i: int) -> MoveOutcome:
    """Lengthen by one using arcs (v, seq[2i]), (w, seq[2i+1]), (w, seq[2i]).

    The new path reverses the prefix and sandwiches the pivot seq[2i] between
    the two inserted vertices:

        seq[2i-1] ... seq[1]  v  seq[2i]  w  seq[2i+1] ... seq[m]
    """
    _check_insertion_args(st, v, w, i)
    seq = st.path.vertices
    for a, b in ((v, seq[2 * i]), (w, seq[2 * i + 1]), (w, seq[2 * i])):
        if not st.host.has_arc(a, b):
            raise MissingArcError(a, b)
    new = tuple(reversed(seq[1 : 2 * i])) + (v, seq[2 * i], w) + seq[2 * i + 1 :]
    return MoveOutcome(MoveKind.EXTENSION, validate_antipath(st.host, new))


def extend_via_odd_chords(st: RotationState, v: int, w: int, i: int) -> MoveOutcome:
    """Lengthen by one using arcs (v, seq[2i]), (w, seq[2i+1]), (w, seq[2i-1]).

    w bridges the two odd positions around the pivot, which is promoted to
    the new head:

        seq[2i]  v  seq[1] ... seq[2i-1]  w  seq[2i+1] ... seq[m]
    """
    _check_insertion_args(st, v, w, i)
    seq = st.path.vertices
    for a, b in ((v, seq[2 * i]), (w, seq[2 * i + 1]), (w, seq[2 * i - 1])):
        if not st.host.has_arc(a, b):
            raise MissingArcError(a, b)
    new = (seq[2 * i], v) + seq[1 : 2 * i] + (w,) + seq[2 * i + 1 :]
    return MoveOutcome(MoveKind.EXTENSION, validate_antipath(st.host, new))


# ---------------------------------------------------------------------------
# heuristic improvement loop


def _endpoint_extension(g: OrientedGraph, wit: AntipathWitness) -> AntipathWitness | None:
    """Grow the path by one vertex at either end; lexicographically least win."""
    seq = wit.vertices
    m = wit.length
    on_path = set(seq)
    first, last = seq[0], seq[m]
    first_emits = wit.start_forward
    # arc directions alternate, so the last arc's direction is set by parity
    last_absorbs = wit.start_forward == (m % 2 == 1)
    candidates: list[tuple[int, ...]] = []
    pool = g.out_neighbors(first) if first_emits else g.in_neighbors(first)
    candidates.extend((w,) + seq for w in pool - on_path)
    pool = g.in_neighbors(last) if last_absorbs else g.out_neighbors(last)
    candidates.extend(seq + (w,) for w in pool - on_path)
    if not candidates:
        return None
    return validate_antipath(g, min(candidates))


def _insertion_pairs(g: OrientedGraph, seq: tuple[int, ...], head: list[int]):
    """(v, w, i) triples satisfying the two shared insertion arcs, in order."""
    m = len(seq) - 1
    for i in range(1, (m - 1) // 2 + 1):
        pivot, after = seq[2 * i], seq[2 * i + 1]
        for v in head:
            if not g.has_arc(v, pivot):
                continue
            for w in head:
                if w != v and g.has_arc(w, after):
                    yield v, w, i


def _forward_seq_moves(g: OrientedGraph, seq: tuple[int, ...]) -> MoveOutcome | None:
    """Swap-then-extend and both insertions, on one forward-first sequence."""
    for swapped in _swap_successors(g, seq):
        ext = _endpoint_extension(g, AntipathWitness(swapped, True))
        if ext is not None:
            return MoveOutcome(MoveKind.EXTENSION, ext)
    head = sorted(g.in_neighbors(seq[1]) - set(seq[2:]))
    for v, w, i in _insertion_pairs(g, seq, head):
        if g.has_arc(w, seq[2 * i]):
            new = tuple(reversed(seq[1 : 2 * i])) + (v, seq[2 * i], w) + seq[2 * i + 1 :]
            return MoveOutcome(MoveKind.EXTENSION, validate_antipath(g, new))
    for v, w, i in _insertion_pairs(g, seq, head):
        if g.has_arc(w, seq[2 * i - 1]):
            new = (seq[2 * i], v) + seq[1 : 2 * i] + (w,) + seq[2 * i + 1 :]
            return MoveOutcome(MoveKind.EXTENSION, validate_antipath(g, new))
    return None


def _lengthening_move(
    g: OrientedGraph, wit: AntipathWitness, cap: int
) -> MoveOutcome | None:
    """One lengthening step, cheapest move first.

    Order: direct endpoint extension; endpoint swaps each followed by an
    extension attempt; pivot-chord insertion; odd-chords insertion; finally
    the same-length rotation closure, retrying the cheaper moves on every
    newly reached path. Returns None when the path cannot be lengthened by
    any of these moves.
    """
    ext = _endpoint_extension(g, wit)
    if ext is not None:
        return MoveOutcome(MoveKind.EXTENSION, ext)
    if wit.length % 2 == 0:
        return None
    seq = wit.vertices if wit.start_forward else tuple(reversed(wit.vertices))
    res = _forward_seq_moves(g, seq)
    if res is not None:
        return res
    seen = {seq}
    queue = deque([seq])
    while queue:
        cur = queue.popleft()
        for nxt in _rotation_successors(g, cur):
            if nxt in seen:
                continue
            if len(seen) >= cap:
                return None
            seen.add(nxt)
            queue.append(nxt)
            rotated = AntipathWitness(nxt, True)
            ext = _endpoint_extension(g, rotated)
            if ext is not None:
                return MoveOutcome(MoveKind.EXTENSION, ext)
            res = _forward_seq_moves(g, nxt)
            if res is not None:
                return res
    return None


def improve(
    g: OrientedGraph, path: AntipathWitness, closure_cap: int = DEFAULT_CLOSURE_CAP
) -> AntipathWitness:
    """Apply lengthening moves until none fires; never shortens.

    This is a heuristic, not a decision procedure: the exact search remains
    the ground truth it is checked against. Deterministic: all candidate
    enumeration is ordered, ties go to the lexicographically least sequence.
    """
    current = validate_antipath(g, path.vertices)
    while True:
        step = _lengthening_move(g, current, closure_cap)
        if step is None:
            return current
        current = step.result


def step_move(
    g: OrientedGraph, path: AntipathWitness, closure_cap: int = DEFAULT_CLOSURE_CAP
) -> MoveOutcome:
    """Single improvement step; NO_MOVE with the input path when stuck."""
    step = _lengthening_move(g, validate_antipath(g, path.vertices), closure_cap)
    if step is None:
        return MoveOutcome(MoveKind.NO_MOVE, path)
    return step


# ---------------------------------------------------------------------------
# maximality audit


@dataclass(frozen=True)
class ExtensionOpening:
    """A two-vertex insertion whose preconditions all hold.

    On a longest path none can exist, since firing it yields the recorded
    longer path.
    """

    v: int
    w: int
    pivot: int
    chord: str  # "onto-pivot" or "before-pivot"
    longer_path: AntipathWitness


@dataclass(frozen=True)
class AuditReport:
    """Structural facts about one path asserted to be longest.

    Violations are data, not errors: a non-maximal input legitimately
    produces openings, and graphs below the degree hypothesis legitimately
    overload the counting bounds.
    """

    k: int
    path: AntipathWitness
    head_candidates: tuple[int, ...]
    extension_openings: tuple[ExtensionOpening, ...]
    window_overloads: tuple[dict, ...]
    last_vertex_feedback: tuple[int, ...]
    head_fanout: dict

    @property
    def openings_ok(self) -> bool:
        return not self.extension_openings

    @property
    def consistent(self) -> bool:
        return (
            self.openings_ok
            and not self.window_overloads
            and not self.last_vertex_feedback
            and self.head_fanout["upper_ok"]
            and self.head_fanout["lower_ok"] is not False
        )

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "path": self.path.serialize(),
            "head_candidates": list(self.head_candidates),
            "extension_openings": [
                {
                    "v": o.v,
                    "w": o.w,
                    "pivot": o.pivot,
                    "chord": o.chord,
                    "longer_path": o.longer_path.serialize(),
                }
                for o in self.extension_openings
            ],
            "window_overloads": list(self.window_overloads),
            "last_vertex_feedback": list(self.last_vertex_feedback),
            "head_fanout": self.head_fanout,
            "consistent": self.consistent,
        }


def audit_maximality(st: RotationState, k: int) -> AuditReport:
    """Check every consequence of maximality this engine knows about.

    (1) No pair of head candidates may satisfy an insertion's preconditions;
        each opening found is reported together with the longer path the
        corresponding insertion builds.
    (2) Arcs from the head candidates into each aligned window of four path
        positions are counted: at most 2|H|+1 per window, and at most 2|H|
        into the first window (no arc may enter the first vertex at all).
    (3) No arc from a head candidate to the last vertex (it would close an
        alternating cycle one longer than the path).
    (4) Fan-out count: with every out-neighbor of the head candidates inside
        the path (true for longest paths), the candidates send at least
        pd * |H| arcs into it, yet the window bounds cap the total at
        (k/2)|H| + (k-4)/4. Both sides are reported; above the degree
        threshold they are contradictory, which is exactly why such graphs
        cannot avoid length-k paths.
    """
    g = st.host
    seq = st.path.vertices
    m = st.path.length
    head = sorted(st.head_candidates)
    hsize = len(head)

    openings: list[ExtensionOpening] = []
    for i in range(1, (m - 1) // 2 + 1):
        pivot, after, before = seq[2 * i], seq[2 * i + 1], seq[2 * i - 1]
        for v in head:
            if not g.has_arc(v, pivot):
                continue
            for w in head:
                if w == v or not g.has_arc(w, after):
                    continue
                if g.has_arc(w, before):
                    longer = extend_via_odd_chords(st, v, w, i).result
                    openings.append(ExtensionOpening(v, w, i, "before-pivot", longer))
                if g.has_arc(w, pivot):
                    longer = extend_via_pivot_chord(st, v, w, i).result
                    openings.append(ExtensionOpening(v, w, i, "onto-pivot", longer))

    overloads: list[dict] = []
    for i in range((m - 3) // 4 + 1):
        window = seq[4 * i : 4 * i + 4]
        count = sum(1 for f in head for q in window if g.has_arc(f, q))
        bound = 2 * hsize if i == 0 else 2 * hsize + 1
        if count > bound:
            overloads.append({"window_start": 4 * i, "count": count, "bound": bound})

    feedback = tuple(f for f in head if g.has_arc(f, seq[m]))

    on_path = set(seq)
    arcs_in = sum(1 for f in head for q in on_path if g.has_arc(f, q))
    confined = all(g.out_neighbors(f) <= on_path for f in head)
    pd = g.degree_profile().min_pseudo_semidegree
    lower = pd * hsize
    upper_ok = 4 * arcs_in <= 2 * k * hsize + k - 4
    fanout = {
        "size": hsize,
        "arcs_into_path": arcs_in,
        "confined": confined,
        "lower_bound": lower,
        "lower_ok": (arcs_in >= lower) if confined else None,
        "upper_bound": (2 * k * hsize + k - 4) / 4,
        "upper_ok": upper_ok,
    }

    return AuditReport(
        k=k,
        path=st.path,
        head_candidates=tuple(head),
        extension_openings=tuple(openings),
        window_overloads=tuple(overloads),
        last_vertex_feedback=feedback,
        head_fanout=fanout,
    )
