"""Geometry of chords over a fixed Hamilton cycle drawn as a circle.

Everything here is pure arithmetic on cycle positions 0..n-1 placed clockwise
on a circle: circular distances, the partition of all chords into parallel
"direction" classes with their within-class order, crossing pairs, the
four-chord shortcut patterns, and the explicit cycle certificates each
configuration yields.
"""

from __future__ import annotations

import functools
import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .graphs import CycleLabeling, Edge, Graph, canonical_edge

VARIANT_I = "I"
VARIANT_II = "II"


def circ_distance(k: int, n: int) -> int:
    """Distance of the residue k from 0 on the n-cycle: min(k mod n, -k mod n)."""
    if n < 1:
        raise ValueError("n must be positive")
    k %= n
    return min(k, n - k)


def direction_of(edge: Edge, n: int) -> int:
    """Direction index of an edge: the sum of its endpoints mod n."""
    x, y = edge
    return (x + y) % n


class DirectionSlice:
    """All edges {x, y} with x + y = i (mod n), ordered outward from the
    midpoint of the class axis.

    Each member edge has its endpoints symmetric about the circle position
    i/2, at half-integer radius r - 1/2 (odd i) or integer radius r (even i).
    Generating edges by increasing radius yields the within-direction order
    directly; distinct edges always have distinct radii, so the order is
    total without tie-breaking.  Loops ({x, x} with 2x = i) are skipped.
    """

    __slots__ = ("n", "i", "xs", "ys", "_edges", "_rank")

    def __init__(self, n: int, i: int):
        if n < 3:
            raise ValueError("need n >= 3")
        self.n = n
        self.i = i % n
        i = self.i
        if i % 2 == 0:
            c = i // 2
            rmax = (n - 1) // 2
            r = np.arange(1, rmax + 1, dtype=np.int64)
            xs = (c - r) % n
            ys = (c + r) % n
        else:
            a, b = (i - 1) // 2, (i + 1) // 2
            rmax = n // 2
            r = np.arange(0, rmax, dtype=np.int64)
            xs = (a - r) % n
            ys = (b + r) % n
        self.xs = xs
        self.ys = ys
        self._edges: list[Edge] | None = None
        self._rank: dict[Edge, int] | None = None

    def __len__(self) -> int:
        return len(self.xs)

    @property
    def ordered_edges(self) -> list[Edge]:
        if self._edges is None:
            self._edges = [
                canonical_edge(int(x), int(y)) for x, y in zip(self.xs, self.ys)
            ]
        return self._edges

    def edge_at(self, rank: int) -> Edge:
        """0-based rank in the within-direction order."""
        return canonical_edge(int(self.xs[rank]), int(self.ys[rank]))

    def rank_of(self, edge: Edge) -> int:
        if self._rank is None:
            self._rank = {e: r for r, e in enumerate(self.ordered_edges)}
        return self._rank[canonical_edge(*edge)]

    # Interval and middle lengths use floor with a minimum of 1, and the
    # interval clamps to the slice end instead of erroring.

    def window_width(self, beta: float) -> int:
        return max(1, int(beta * self.n))

    def interval_bounds(self, k: int, beta: float) -> tuple[int, int]:
        """Half-open 0-based bounds of the width-floor(beta*n) window whose
        leftmost element is the k-th smallest (k is 1-based)."""
        if k < 1:
            raise ValueError("window start k is 1-based")
        w = self.window_width(beta)
        lo = min(k - 1, len(self))
        return lo, min(lo + w, len(self))

    def interval(self, k: int, beta: float) -> list[Edge]:
        lo, hi = self.interval_bounds(k, beta)
        return self.ordered_edges[lo:hi]

    def max_window_start(self, beta: float) -> int:
        """Largest valid 1-based window start: floor((1/2 - beta) * n)."""
        return max(1, int((0.5 - beta) * self.n))

    def middle_bounds(self, beta: float) -> tuple[int, int]:
        trim = self.window_width(beta)
        lo, hi = trim, len(self) - trim
        return (lo, hi) if lo < hi else (0, 0)

    def middle(self, beta: float) -> list[Edge]:
        lo, hi = self.middle_bounds(beta)
        return self.ordered_edges[lo:hi]

    def presence(self, adjacency: np.ndarray) -> np.ndarray:
        """Boolean membership of each slice edge in the given adjacency matrix."""
        return adjacency[self.xs, self.ys]

    def __repr__(self) -> str:
        return f"DirectionSlice(n={self.n}, i={self.i}, size={len(self)})"


def direction_slice(n: int, i: int) -> DirectionSlice:
    return DirectionSlice(n, i)


@functools.lru_cache(maxsize=4)
def all_direction_slices(n: int) -> tuple[DirectionSlice, ...]:
    return tuple(DirectionSlice(n, i) for i in range(n))


# -- crossings ----------------------------------------------------------------


def _strictly_inside(x: int, a: int, b: int, n: int) -> bool:
    # x strictly inside the clockwise arc a -> b
    return 0 < (x - a) % n < (b - a) % n


def is_crossing(e1: Edge, e2: Edge, n: int) -> bool:
    """True iff the four endpoints are distinct and alternate on the circle."""
    a, b = e1
    c, d = e2
    if len({a % n, b % n, c % n, d % n}) != 4:
        return False
    return _strictly_inside(c, a, b, n) != _strictly_inside(d, a, b, n)


def is_close_crossing(e1: Edge, e2: Edge, n: int, beta: float) -> bool:
    """A crossing whose closest pair of endpoints is within floor(beta*n)."""
    if not is_crossing(e1, e2, n):
        return False
    limit = int(beta * n)
    return (
        min(
            circ_distance(e1[0] - e2[0], n),
            circ_distance(e1[0] - e2[1], n),
            circ_distance(e1[1] - e2[0], n),
            circ_distance(e1[1] - e2[1], n),
        )
        <= limit
    )


def crossing_ranks(e1: Edge, target: DirectionSlice) -> list[int]:
    """Ranks (0-based) of the edges in ``target`` that cross ``e1``.

    Always a contiguous interval of the within-direction order.
    """
    n = target.n
    return [r for r in range(len(target)) if is_crossing(e1, target.edge_at(r), n)]


def close_crossing_ranks(e1: Edge, target: DirectionSlice, beta: float) -> list[int]:
    n = target.n
    return [
        r
        for r in range(len(target))
        if is_close_crossing(e1, target.edge_at(r), n, beta)
    ]


def covering_window_starts(
    ranks: Sequence[int], target: DirectionSlice, beta: float
) -> tuple[int, int] | None:
    """Two 1-based window starts (k1, k2) whose width-beta*n intervals cover
    the given ranks, if such a pair exists within the valid start range."""
    if not ranks:
        return (1, 1)
    w = target.window_width(beta)
    kmax = target.max_window_start(beta)
    lo, hi = min(ranks), max(ranks)
    rset = set(ranks)
    # Greedy: one window anchored at the lowest rank, one ending at the highest.
    k1 = lo + 1
    k2 = max(1, hi + 1 - (w - 1))
    if k1 > kmax or k2 > kmax:
        return None
    covered = set(range(k1 - 1, min(k1 - 1 + w, len(target))))
    covered |= set(range(k2 - 1, min(k2 - 1 + w, len(target))))
    return (k1, k2) if rset <= covered else None


@dataclass(frozen=True)
class CrossingPair:
    """Two crossing chords, recorded with the direction of the first and the
    direction offset of the second."""

    e1: Edge
    e2: Edge
    i: int
    l: int
    close: bool = False
    beta: float | None = None

    @classmethod
    def from_edges(
        cls, e1: Edge, e2: Edge, n: int, beta: float | None = None
    ) -> "CrossingPair":
        e1 = canonical_edge(*e1)
        e2 = canonical_edge(*e2)
        i = direction_of(e1, n)
        l = (direction_of(e2, n) - i) % n
        close = beta is not None and is_close_crossing(e1, e2, n, beta)
        return cls(e1, e2, i, l, close, beta)


# -- shortcuts ----------------------------------------------------------------


@dataclass(frozen=True)
class Shortcut:
    """Four chords in one of the two shortcut patterns.

    Together with the base cycle the four chords close up cycles of lengths
    l + 8 and n - l.
    """

    variant: str
    i1: int
    i2: int
    i3: int
    i4: int
    l: int

    def points_in_order(self, n: int) -> tuple[int, ...]:
        """The eight anchor points in required clockwise order."""
        i1, i2, i3, i4, l = (
            self.i1 % n,
            self.i2 % n,
            self.i3 % n,
            self.i4 % n,
            self.l,
        )
        if self.variant == VARIANT_I:
            return (
                i1,
                (i1 + 1) % n,
                i2,
                (i2 + 1) % n,
                i3,
                (i3 + 1) % n,
                i4,
                (i4 + l + 1) % n,
            )
        if self.variant == VARIANT_II:
            return (
                i1,
                (i1 + 1) % n,
                i2,
                (i2 + 1) % n,
                i4,
                (i4 + l + 1) % n,
                i3,
                (i3 + 1) % n,
            )
        raise ValueError(f"unknown shortcut variant {self.variant!r}")

    def chords(self, n: int) -> tuple[Edge, Edge, Edge, Edge]:
        i1, i2, i3, i4, l = self.i1, self.i2, self.i3, self.i4, self.l
        return (
            canonical_edge(i1 % n, i3 % n),
            canonical_edge((i1 + 1) % n, i4 % n),
            canonical_edge(i2 % n, (i4 + l + 1) % n),
            canonical_edge((i2 + 1) % n, (i3 + 1) % n),
        )


def validate_shortcut(s: Shortcut, n: int) -> bool:
    """True iff the eight anchor points are distinct and clockwise-ordered
    for the claimed variant, with 0 <= 2l <= n."""
    if s.variant not in (VARIANT_I, VARIANT_II):
        return False
    if s.l < 0 or 2 * s.l > n:
        return False
    pts = s.points_in_order(n)
    rel = [(p - pts[0]) % n for p in pts]
    return all(rel[j] < rel[j + 1] for j in range(7))


def _asc(a: int, b: int, n: int) -> list[int]:
    # clockwise walk a, a+1, ..., b (inclusive)
    return [(a + j) % n for j in range(((b - a) % n) + 1)]


def _desc(a: int, b: int, n: int) -> list[int]:
    # counterclockwise walk a, a-1, ..., b (inclusive)
    return [(a - j) % n for j in range(((a - b) % n) + 1)]


def cycles_from_shortcut(
    s: Shortcut, n: int
) -> tuple["CycleCertificate", "CycleCertificate"]:
    """Explicit cycles of lengths l + 8 and n - l through a valid shortcut.

    Raises ValueError on an invalid shortcut.
    """
    if not validate_shortcut(s, n):
        raise ValueError(f"invalid shortcut {s} for n={n}")
    i1, i2, i3, i4, l = s.i1 % n, s.i2 % n, s.i3 % n, s.i4 % n, s.l

    short_seq = (
        [i1, (i1 + 1) % n]
        + _asc(i4, (i4 + l + 1) % n, n)
        + [i2, (i2 + 1) % n]
        + [(i3 + 1) % n, i3]
    )
    if s.variant == VARIANT_I:
        long_seq = (
            [i1]
            + _desc(i3, (i2 + 1) % n, n)
            + _asc((i3 + 1) % n, i4, n)
            + _asc((i1 + 1) % n, i2, n)
            + _asc((i4 + l + 1) % n, (i1 - 1) % n, n)
        )
    else:
        long_seq = (
            [i1]
            + _desc(i3, (i4 + l + 1) % n, n)
            + _desc(i2, (i1 + 1) % n, n)
            + _desc(i4, (i2 + 1) % n, n)
            + _asc((i3 + 1) % n, (i1 - 1) % n, n)
        )
    return (
        CycleCertificate.from_position_cycle(short_seq, n),
        CycleCertificate.from_position_cycle(long_seq, n),
    )


def cycles_from_crossing(
    cp: CrossingPair, n: int
) -> tuple["CycleCertificate", "CycleCertificate"]:
    """Explicit cycles of lengths l + 2 and n - l + 2 through a crossing pair.

    Raises ValueError if the pair does not cross or its recorded directions
    are inconsistent.
    """
    e1, e2 = cp.e1, cp.e2
    if not is_crossing(e1, e2, n):
        raise ValueError(f"edges {e1} and {e2} do not cross on the {n}-cycle")
    if cp.i % n != direction_of(e1, n):
        raise ValueError("recorded direction does not match e1")
    l = (direction_of(e2, n) - direction_of(e1, n)) % n
    if cp.l % n != l:
        raise ValueError("recorded direction offset does not match the pair")

    q0 = e1[0]
    rel = sorted((p - q0) % n for p in (e1[0], e1[1], e2[0], e2[1]))
    q = [(q0 + r) % n for r in rel]
    # alternation puts e1 = {q[0], q[2]} and e2 = {q[1], q[3]}
    seq_small = [q[0]] + _asc(q[2], q[3], n) + _desc(q[1], (q[0] + 1) % n, n)
    seq_large = [q[0]] + _desc(q[2], q[1], n) + _asc(q[3], (q[0] - 1) % n, n)
    return (
        CycleCertificate.from_position_cycle(seq_small, n),
        CycleCertificate.from_position_cycle(seq_large, n),
    )


# -- certificates ---------------------------------------------------------------


@dataclass(frozen=True)
class CycleCertificate:
    """A claimed cycle: its length, vertex sequence (in cycle-position
    coordinates), and the edges it uses that are off the base cycle."""

    t: int
    vertices: tuple[int, ...]
    extra_edges: frozenset[Edge]

    @classmethod
    def from_position_cycle(cls, vertices: Sequence[int], n: int) -> "CycleCertificate":
        verts = tuple(int(v) % n for v in vertices)
        extras = []
        for j, u in enumerate(verts):
            v = verts[(j + 1) % len(verts)]
            if circ_distance(u - v, n) != 1:
                extras.append(canonical_edge(u, v))
        return cls(t=len(verts), vertices=verts, extra_edges=frozenset(extras))

    def to_json_dict(self) -> dict:
        return {
            "t": self.t,
            "vertices": list(self.vertices),
            "extra_edges": sorted([list(e) for e in self.extra_edges]),
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "CycleCertificate":
        return cls(
            t=int(data["t"]),
            vertices=tuple(int(v) for v in data["vertices"]),
            extra_edges=frozenset(canonical_edge(*e) for e in data["extra_edges"]),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "CycleCertificate":
        return cls.from_json_dict(json.loads(text))


def verify_certificate(
    graph: Graph, labeling: CycleLabeling, cert: CycleCertificate
) -> bool:
    """Check a certificate against the host graph: correct length, distinct
    vertices, every consecutive pair adjacent, and the recorded extra edges
    exactly the cycle edges off the labeled Hamilton cycle."""
    n = graph.n
    verts = cert.vertices
    if cert.t != len(verts) or cert.t < 3 or cert.t > n:
        return False
    if any(not (0 <= v < n) for v in verts):
        return False
    if len(set(verts)) != len(verts):
        return False
    extras = set()
    order = labeling.order
    for j, u in enumerate(verts):
        v = verts[(j + 1) % len(verts)]
        if not graph.has_edge(order[u], order[v]):
            return False
        if circ_distance(u - v, n) != 1:
            extras.add(canonical_edge(u, v))
    return extras == set(cert.extra_edges)


def hamilton_certificate(n: int) -> CycleCertificate:
    """The base cycle itself as a certificate of length n."""
    return CycleCertificate.from_position_cycle(range(n), n)


def certificate_host_graph(
    extra_edges: Iterable[Edge], n: int
) -> Graph:
    """The n-cycle plus the given chords; handy for oracle checks."""
    edges = [( (i, (i + 1) % n) ) for i in range(n)]
    edges.extend(extra_edges)
    return Graph(n, edges)
