"""Cycle-spectrum search over a graph with a planted Hamilton cycle.

For each requested length the finder produces an explicit, verified
:class:`~pancyclic.geometry.CycleCertificate`, routed by length band:

* tiny lengths (3..7): single chords, crossings, merged four-chord patterns,
  then exact small-graph search;
* short and long lengths: four-chord shortcut search (proof-guided degree
  buckets first, exhaustive scan as fallback);
* medium lengths: close-crossing search over good directions, falling back
  to an exhaustive crossing scan.

Every certificate is checked by ``verify_certificate`` before it is emitted;
missing lengths carry a machine-readable reason from a closed vocabulary.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .geometry import (
    VARIANT_I,
    VARIANT_II,
    CrossingPair,
    CycleCertificate,
    Shortcut,
    all_direction_slices,
    cycles_from_crossing,
    cycles_from_shortcut,
    hamilton_certificate,
    is_close_crossing,
    is_crossing,
    validate_shortcut,
    verify_certificate,
)
from .graphs import CycleLabeling, Edge, Graph, canonical_edge

# Closed vocabulary of failure reasons carried by reports.
NO_ODD_CYCLE = "no-odd-cycle"
NO_SHORTCUT = "no-shortcut"
NO_CROSSING = "no-crossing"
RANGE_EMPTY = "range-empty"


def stage_failure(stage: str) -> str:
    return f"stage-failure:{stage}"


@dataclass(frozen=True)
class SpectrumRequest:
    """Search parameters; unset knobs derive from the resilience margin eps."""

    eps: float = 0.1
    delta: float | None = None
    beta: float | None = None
    eps_prime: float | None = None
    p: float | None = None
    small_n_exhaustive: int = 14
    tiny_search_budget: int = 500_000

    def __post_init__(self):
        if not (0.0 < self.eps <= 1.0):
            raise ValueError("eps must be in (0, 1]")
        if self.delta is None:
            object.__setattr__(self, "delta", self.eps / 64.0)
        if self.beta is None:
            object.__setattr__(self, "beta", min(self.delta / 4.0, self.eps / 10.0))
        if self.eps_prime is None:
            object.__setattr__(self, "eps_prime", self.eps / 10.0)
        if not (0.0 < self.delta < 1.0):
            raise ValueError("delta must be in (0, 1)")
        if not (0.0 < self.beta < 1.0 / 6.0):
            raise ValueError("beta must be in (0, 1/6)")
        if not (0.0 < self.eps_prime < 1.0):
            raise ValueError("eps_prime must be in (0, 1)")
        if self.p is not None and not (0.0 <= self.p <= 1.0):
            raise ValueError("p must be in [0, 1]")


@dataclass(frozen=True)
class MissingLength:
    t: int
    reason: str


@dataclass
class CycleSpectrum:
    found: dict[int, CycleCertificate] = field(default_factory=dict)
    missing: list[MissingLength] = field(default_factory=list)

    @property
    def found_lengths(self) -> set[int]:
        return set(self.found)

    def max_extra_edges(self) -> int:
        return max((len(c.extra_edges) for c in self.found.values()), default=0)

    def to_json_dict(self) -> dict:
        return {
            "found": {str(t): c.to_json_dict() for t, c in sorted(self.found.items())},
            "missing": [
                {"t": m.t, "reason": m.reason}
                for m in sorted(self.missing, key=lambda m: m.t)
            ],
        }


class _Workspace:
    """Per-run index: canonical graph, chord presence by direction, spans."""

    def __init__(self, graph: Graph, labeling: CycleLabeling):
        self.graph = graph
        self.labeling = labeling
        self.n = graph.n
        self.canon = labeling.canonical_graph(graph)
        self.slices = all_direction_slices(self.n)
        self._adj_matrix: np.ndarray | None = None
        self._chord_matrix: np.ndarray | None = None
        self._rolled: np.ndarray | None = None
        self._chord_active: np.ndarray | None = None
        self._present: list[np.ndarray | None] = [None] * self.n
        self._chords: list[Edge] | None = None
        self._span_index: dict[int, Edge] | None = None
        self._bipartite: bool | None = None
        self._shortcut_cache: dict[int, Shortcut | None] = {}

    @property
    def adj_matrix(self) -> np.ndarray:
        if self._adj_matrix is None:
            self._adj_matrix = self.canon.adjacency_matrix()
        return self._adj_matrix

    @property
    def chord_matrix(self) -> np.ndarray:
        if self._chord_matrix is None:
            mat = self.adj_matrix.copy()
            n = self.n
            idx = np.arange(n)
            nxt = (idx + 1) % n
            mat[idx, nxt] = False
            mat[nxt, idx] = False
            self._chord_matrix = mat
        return self._chord_matrix

    @property
    def rolled_chords(self) -> np.ndarray:
        if self._rolled is None:
            self._rolled = _rolled_rows(self.chord_matrix)
        return self._rolled

    @property
    def chord_active(self) -> np.ndarray:
        """Vertices incident to at least one chord."""
        if self._chord_active is None:
            self._chord_active = self.chord_matrix.any(axis=1)
        return self._chord_active

    def present_chord_ranks(self, i: int) -> np.ndarray:
        """Ranks of this direction's chords that are present in the graph."""
        i %= self.n
        if self._present[i] is None:
            sl = self.slices[i]
            pres = self.chord_matrix[sl.xs, sl.ys]
            self._present[i] = np.flatnonzero(pres)
        return self._present[i]

    def present_chords(self, i: int) -> list[Edge]:
        sl = self.slices[i % self.n]
        return [sl.edge_at(int(r)) for r in self.present_chord_ranks(i)]

    @property
    def chords(self) -> list[Edge]:
        if self._chords is None:
            n = self.n
            self._chords = sorted(
                e
                for e in self.canon.edges()
                if not (abs(e[0] - e[1]) in (1, n - 1))
            )
        return self._chords

    def span_certificate(self, t: int) -> CycleCertificate | None:
        """A t-cycle made of one chord plus one arc, if some chord spans it."""
        if self._span_index is None:
            index: dict[int, Edge] = {}
            n = self.n
            for x, y in self.chords:
                d = (y - x) % n
                index.setdefault(d + 1, (x, y))
                index.setdefault(n - d + 1, (y, x))
            self._span_index = index
        hit = self._span_index.get(t)
        if hit is None:
            return None
        a, b = hit
        n = self.n
        seq = [(a + j) % n for j in range(((b - a) % n) + 1)]
        return CycleCertificate.from_position_cycle(seq, n)

    @property
    def is_bipartite(self) -> bool:
        if self._bipartite is None:
            self._bipartite = _is_bipartite(self.canon)
        return self._bipartite


def _is_bipartite(graph: Graph) -> bool:
    n = graph.n
    color = [-1] * n
    for s in range(n):
        if color[s] != -1 or not graph.adjacency_mask(s):
            continue
        color[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for v in graph.neighbors(u):
                if color[v] == -1:
                    color[v] = color[u] ^ 1
                    stack.append(v)
                elif color[v] == color[u]:
                    return False
    return True


# -- good directions ------------------------------------------------------------


def good_directions(
    graph: Graph,
    labeling: CycleLabeling,
    beta: float,
    eps_prime: float,
    p: float,
) -> tuple[frozenset[int], int]:
    """Directions whose every window and middle segment has an edge count
    within the (1 +- eps_prime) band around its density-p expectation.

    Bands are centered on (actual segment size) * p, so the complete graph at
    p = 1 is exactly good in every direction.
    """
    if not (0.0 < beta < 1.0 / 6.0):
        raise ValueError("beta must be in (0, 1/6)")
    ws = _Workspace(graph, labeling)
    good = []
    slack = 1e-9
    for i in range(ws.n):
        sl = ws.slices[i]
        pres = sl.presence(ws.adj_matrix).astype(np.int64)
        cs = np.concatenate([[0], np.cumsum(pres)])
        w = sl.window_width(beta)
        kmax = sl.max_window_start(beta)
        lo = np.minimum(np.arange(kmax), len(sl))
        hi = np.minimum(lo + w, len(sl))
        counts = cs[hi] - cs[lo]
        centers = (hi - lo) * p
        if np.any(np.abs(counts - centers) > eps_prime * centers + slack):
            continue
        mlo, mhi = sl.middle_bounds(beta)
        mcount = cs[mhi] - cs[mlo]
        mcenter = (mhi - mlo) * p
        if abs(mcount - mcenter) > eps_prime * mcenter + slack:
            continue
        good.append(i)
    return frozenset(good), ws.n - len(good)


# -- shortcut search --------------------------------------------------------------


def _rolled_rows(matrix: np.ndarray) -> np.ndarray:
    """R[v, t] = matrix[v, (v + t) mod n]."""
    n = matrix.shape[0]
    idx = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    return np.take_along_axis(matrix, idx, axis=1)


def _variant_windows(n: int, l: int, t2: int) -> dict[str, tuple[int, int, int, int]]:
    # inclusive (t3_lo, t3_hi, t4_lo, t4_hi) per variant, before the pairwise
    # order constraint between t3 and t4
    return {
        VARIANT_I: (t2 + 2, n - 4 - l, t2 + 4, n - 2 - l),
        VARIANT_II: (t2 + l + 4, n - 2, t2 + 2, n - 4 - l),
    }


def _shortcut_exhaustive(
    rolled: np.ndarray, n: int, l: int, active: np.ndarray | None = None
) -> Shortcut | None:
    """Deterministic first-witness scan over (i1, t2, variant, t3, t4).

    Anchors i1 and i2 both need chords at the pair (v, v+1), so vertices
    without chords are skipped outright; that keeps absence checks cheap in
    sparse graphs.
    """
    if active is not None:
        pair_ok = active & np.roll(active, -1)
        anchors = np.flatnonzero(pair_ok).tolist()
    else:
        pair_ok = None
        anchors = list(range(n))
    anchor_set = set(anchors)
    for i1 in anchors:
        r_i1 = rolled[i1]
        r_v1 = rolled[(i1 + 1) % n]
        for t2 in range(2, n - 5 - l):
            if pair_ok is not None and (i1 + t2) % n not in anchor_set:
                continue
            u1 = (i1 + t2 + 1) % n
            u2 = (i1 + t2) % n
            r_u1 = rolled[u1]
            r_u2 = rolled[u2]
            # a[t3] = chord(i1, i1+t3) and chord(i2+1, i3+1)
            # b[t4] = chord(i1+1, i1+t4) and chord(i2, i4+l+1)
            a = np.zeros(n, dtype=bool)
            lo3 = t2 + 2
            a[lo3 : n - 1] = r_i1[lo3 : n - 1] & r_u1[lo3 - t2 : n - 1 - t2]
            b = np.zeros(n, dtype=bool)
            lo4 = t2 + 2
            hi4 = n - 2 - l
            if lo4 <= hi4:
                b[lo4 : hi4 + 1] = (
                    r_v1[lo4 - 1 : hi4] & r_u2[lo4 + l + 1 - t2 : hi4 + l + 2 - t2]
                )
            a_idx = np.flatnonzero(a)
            b_idx = np.flatnonzero(b)
            if len(a_idx) == 0 or len(b_idx) == 0:
                continue
            for variant in (VARIANT_I, VARIANT_II):
                t3_lo, t3_hi, t4_lo, t4_hi = _variant_windows(n, l, t2)[variant]
                if variant == VARIANT_I:
                    # first t3, then smallest t4 >= t3 + 2
                    for t3 in a_idx:
                        if t3 < t3_lo or t3 > t3_hi:
                            continue
                        j = np.searchsorted(b_idx, max(t4_lo, t3 + 2))
                        if j < len(b_idx) and b_idx[j] <= t4_hi:
                            return _make_shortcut(
                                variant, n, l, i1, t2, int(t3), int(b_idx[j])
                            )
                else:
                    for t4 in b_idx:
                        if t4 < t4_lo or t4 > t4_hi:
                            continue
                        j = np.searchsorted(a_idx, max(t3_lo, t4 + l + 2))
                        if j < len(a_idx) and a_idx[j] <= t3_hi:
                            return _make_shortcut(
                                variant, n, l, i1, t2, int(a_idx[j]), int(t4)
                            )
    return None


def _make_shortcut(
    variant: str, n: int, l: int, i1: int, t2: int, t3: int, t4: int
) -> Shortcut:
    s = Shortcut(
        variant=variant,
        i1=i1,
        i2=(i1 + t2) % n,
        i3=(i1 + t3) % n,
        i4=(i1 + t4) % n,
        l=l,
    )
    assert validate_shortcut(s, n), (s, n)
    return s


def _shortcut_guided(ws: _Workspace, l: int) -> Shortcut | None:
    """Degree-bucket search following the saturation argument; None on any
    shortfall (the exhaustive scan then decides)."""
    n = ws.n
    canon = ws.canon
    pairs = n * (n - 1) / 2
    eps_p = canon.edge_count / pairs - 0.5
    if eps_p <= 0:
        return None
    deg = [canon.degree(v) for v in range(n)]
    half = [
        i
        for i in range(n // 2)
        if deg[2 * i] + deg[2 * i + 1] >= (1 + eps_p / 2.0) * n
    ]
    if len(half) < 2:
        return None
    bucket_w = max(1, int(eps_p * n / 4))
    buckets: dict[int, list[int]] = {}
    for i in half:
        buckets.setdefault(deg[2 * i] // bucket_w, []).append(i)
    tier = max(buckets.values(), key=len)
    arc_w = max(1, int(eps_p * n / 16))
    arcs: dict[int, list[int]] = {}
    for i in tier:
        arcs.setdefault((2 * i) // arc_w, []).append(i)
    close_set = max(arcs.values(), key=len)
    if len(close_set) < 2:
        return None
    chord = ws.chord_matrix
    for ia in close_set[:12]:
        for ib in close_set[:12]:
            if ia == ib:
                continue
            i1, i2 = 2 * ia, 2 * ib
            k = (i2 - i1) % n
            if not (0 < k <= arc_w + 1):
                continue
            cand = _guided_pair(chord, n, l, i1, k)
            if cand is not None:
                return cand
    return None


def _guided_pair(
    chord: np.ndarray, n: int, l: int, i1: int, t2: int
) -> Shortcut | None:
    offs = np.arange(n)
    ring = (i1 + offs) % n
    # B: positions t with chords {i1+1, i1+t} and {i2, i1+t+l+1}
    lo, hi = t2 + 2, n - 2 - l
    if lo > hi:
        return None
    t = np.arange(lo, hi + 1)
    b_mask = chord[(i1 + 1) % n, ring[t]] & chord[(i1 + t2) % n, ring[(t + l + 1) % n]]
    b_cands = t[b_mask]
    # the i3 block may sit past the i4 block, up to position n-2
    tc = np.arange(lo, n - 1)
    c_mask = chord[i1, ring[tc]] & chord[(i1 + t2 + 1) % n, ring[(tc + 1) % n]]
    c_cands = tc[c_mask]
    if len(b_cands) == 0 or len(c_cands) == 0:
        return None
    for t4 in b_cands[:20].tolist():
        for t3 in c_cands.tolist():
            if t3 + 2 <= t4 and t4 <= n - 2 - l and t3 >= t2 + 2:
                s = _make_unchecked(VARIANT_I, n, l, i1, t2, t3, t4)
            elif t3 >= t4 + l + 2 and t3 <= n - 2 and t4 >= t2 + 2:
                s = _make_unchecked(VARIANT_II, n, l, i1, t2, t3, t4)
            else:
                continue
            if validate_shortcut(s, n):
                return s
    return None


def _make_unchecked(variant, n, l, i1, t2, t3, t4) -> Shortcut:
    return Shortcut(
        variant=variant,
        i1=i1,
        i2=(i1 + t2) % n,
        i3=(i1 + t3) % n,
        i4=(i1 + t4) % n,
        l=l,
    )


def find_shortcut(
    graph: Graph, labeling: CycleLabeling, l: int
) -> Shortcut | None:
    """A valid shortcut with gap l whose four chords all lie off the cycle,
    or None if the graph has none."""
    ws = _Workspace(graph, labeling)
    return _find_shortcut(ws, l)


def _find_shortcut(ws: _Workspace, l: int) -> Shortcut | None:
    n = ws.n
    if l < 0 or 2 * l > n:
        raise ValueError(f"gap l={l} outside [0, n/2] for n={n}")
    if n < l + 8:
        return None
    if l in ws._shortcut_cache:
        return ws._shortcut_cache[l]
    result: Shortcut | None = None
    if ws.chord_active.sum() >= 8:
        result = _shortcut_guided(ws, l)
        if result is None:
            result = _shortcut_exhaustive(ws.rolled_chords, n, l, ws.chord_active)
    ws._shortcut_cache[l] = result
    return result


# -- crossing search ---------------------------------------------------------------


def _crossing_for_offset(
    ws: _Workspace, l: int, beta: float | None, restrict: frozenset[int] | None
) -> CrossingPair | None:
    """First chord pair (by direction, then rank) crossing at offset l.

    With ``beta`` set, only close crossings count and first edges are drawn
    from the middle of their direction; with ``restrict`` set, both
    directions must belong to it.
    """
    n = ws.n
    for i in range(n):
        j = (i + l) % n
        if restrict is not None and (i not in restrict or j not in restrict):
            continue
        ranks_i = ws.present_chord_ranks(i)
        if len(ranks_i) == 0:
            continue
        ranks_j = ws.present_chord_ranks(j)
        if len(ranks_j) == 0:
            continue
        sl_i = ws.slices[i]
        sl_j = ws.slices[j]
        if beta is not None:
            mlo, mhi = sl_i.middle_bounds(beta)
            use_i = [r for r in ranks_i.tolist() if mlo <= r < mhi]
        else:
            use_i = ranks_i.tolist()
        for r1 in use_i:
            e1 = sl_i.edge_at(r1)
            for r2 in ranks_j.tolist():
                e2 = sl_j.edge_at(r2)
                if beta is not None:
                    if is_close_crossing(e1, e2, n, beta):
                        return CrossingPair.from_edges(e1, e2, n, beta)
                elif is_crossing(e1, e2, n):
                    return CrossingPair.from_edges(e1, e2, n)
    return None


def find_medium_cycle(
    graph: Graph,
    labeling: CycleLabeling,
    t: int,
    req: SpectrumRequest,
) -> CycleCertificate | None:
    """Certificate of length t from a crossing pair at offset t - 2.

    Scans close crossings inside good directions first (when the model
    density is known), then falls back to an exhaustive crossing scan.
    """
    if not (3 <= t <= graph.n):
        raise ValueError(f"length t={t} outside [3, n]")
    ws = _Workspace(graph, labeling)
    good = None
    if req.p is not None:
        good, _ = good_directions(graph, labeling, req.beta, req.eps_prime, req.p)
    return _find_medium(ws, t, req, good)


def _find_medium(
    ws: _Workspace,
    t: int,
    req: SpectrumRequest,
    good: frozenset[int] | None,
) -> CycleCertificate | None:
    n = ws.n
    l = t - 2
    if not (2 <= l <= n - 2):
        return None
    if good is not None:
        cp = _crossing_for_offset(ws, l, req.beta, good)
        if cp is not None:
            cert, _ = cycles_from_crossing(cp, n)
            if cert.t == t:
                return cert
    cp = _crossing_for_offset(ws, l, None, None)
    if cp is not None:
        cert, other = cycles_from_crossing(cp, n)
        if cert.t == t:
            return cert
        if other.t == t:
            return other
    return None


# -- tiny cycles -------------------------------------------------------------------

# Merge patterns for lengths 5..7: which of the four two-point blocks of the
# gap-0 shortcut template collapse to a single vertex.  Each template yields a
# cycle of length 8 - (number of merged blocks) using exactly four chords.
_MERGE_PATTERNS: dict[int, list[tuple[int, ...]]] = {
    7: [(1,), (2,), (3,), (4,)],
    6: [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)],
    5: [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)],
}


def _merged_template_cycle(
    starts: tuple[int, int, int, int], sizes: tuple[int, int, int, int], n: int
) -> tuple[list[int], list[Edge]]:
    """Vertex sequence and required chords for a merged shortcut instance.

    Blocks sit clockwise; block j occupies [starts[j], starts[j]+sizes[j]-1].
    """
    u1, u2, u3, u4 = starts
    s1, s2, s3, s4 = sizes
    hi = lambda u, s: (u + s - 1) % n
    chords = [
        canonical_edge(u1, u3),
        canonical_edge(hi(u1, s1), u4),
        canonical_edge(u2, hi(u4, s4)),
        canonical_edge(hi(u2, s2), hi(u3, s3)),
    ]
    seq = [u1]
    if s1 == 2:
        seq.append(hi(u1, s1))
    seq.append(u4)
    if s4 == 2:
        seq.append(hi(u4, s4))
    seq.append(u2)
    if s2 == 2:
        seq.append(hi(u2, s2))
    seq.append(hi(u3, s3))
    if s3 == 2:
        seq.append(u3)
    return seq, chords


def _find_merged_shortcut_cycle(
    ws: _Workspace, t: int, budget: int
) -> CycleCertificate | None:
    n = ws.n
    if t not in _MERGE_PATTERNS or n < 8:
        return None
    chord = ws.chord_matrix
    steps = 0
    for merged in _MERGE_PATTERNS[t]:
        sizes = tuple(1 if j + 1 in merged else 2 for j in range(4))
        span = sum(sizes)
        for u1 in range(n):
            n1 = np.flatnonzero(chord[u1])
            h1 = (u1 + sizes[0] - 1) % n
            n1b = np.flatnonzero(chord[h1])
            for u3 in n1.tolist():
                for u4 in n1b.tolist():
                    steps += 1
                    if steps > budget:
                        return None
                    starts = None
                    for u2c in np.flatnonzero(chord[(u4 + sizes[3] - 1) % n]).tolist():
                        h2 = (u2c + sizes[1] - 1) % n
                        if not chord[h2, (u3 + sizes[2] - 1) % n]:
                            continue
                        cand = (u1, u2c, u3, u4)
                        if _blocks_clockwise(cand, sizes, n):
                            starts = cand
                            break
                    if starts is None:
                        continue
                    seq, chords = _merged_template_cycle(starts, sizes, n)
                    if len(set(seq)) != len(seq):
                        continue
                    if all(chord[a, b] for a, b in chords):
                        cert = CycleCertificate.from_position_cycle(seq, n)
                        if cert.t == t and len(cert.extra_edges) <= 4:
                            return cert
        if span > n:
            return None
    return None


def _blocks_clockwise(
    starts: tuple[int, int, int, int], sizes: tuple[int, int, int, int], n: int
) -> bool:
    # clockwise block order 1, 2, 3, 4 with pairwise-disjoint spans
    pts = []
    for u, s in zip(starts, sizes):
        pts.append(u)
        if s == 2:
            pts.append((u + 1) % n)
    rel = [(p - pts[0]) % n for p in pts]
    return all(rel[j] < rel[j + 1] for j in range(len(rel) - 1))


def _search_cycle_chord_budget(
    ws: _Workspace, t: int, max_chords: int
) -> CycleCertificate | None:
    """Exact DFS for a t-cycle using at most ``max_chords`` off-cycle edges.

    Intended for small n; cost grows quickly with the graph.
    """
    n = ws.n
    g = ws.canon

    def is_chord(u: int, v: int) -> bool:
        return abs(u - v) not in (1, n - 1)

    for s in range(n):
        stack = [(s, 1 << s, 0, [s])]
        while stack:
            u, visited, used, path = stack.pop()
            if len(path) == t:
                if g.has_edge(u, s) and used + is_chord(u, s) <= max_chords:
                    return CycleCertificate.from_position_cycle(path, n)
                continue
            for v in g.neighbors(u):
                if v <= s or (visited >> v) & 1:
                    continue
                nu = used + is_chord(u, v)
                if nu > max_chords:
                    continue
                stack.append((v, visited | (1 << v), nu, path + [v]))
    return None


def _search_cycle_any(
    ws: _Workspace, t: int, budget: int
) -> CycleCertificate | None:
    """Bounded DFS for any t-cycle; gives up once the step budget is spent."""
    n = ws.n
    g = ws.canon
    steps = 0
    for s in range(n):
        stack = [(s, 1 << s, [s])]
        while stack:
            steps += 1
            if steps > budget:
                return None
            u, visited, path = stack.pop()
            if len(path) == t:
                if g.has_edge(u, s):
                    return CycleCertificate.from_position_cycle(path, n)
                continue
            for v in g.neighbors(u):
                if v <= s or (visited >> v) & 1:
                    continue
                stack.append((v, visited | (1 << v), path + [v]))
    return None


def _find_tiny(
    ws: _Workspace, t: int, req: SpectrumRequest
) -> CycleCertificate | None:
    n = ws.n
    if t == n:
        return hamilton_certificate(n)
    if ws.is_bipartite and t % 2 == 1:
        return None
    cert = ws.span_certificate(t)
    if cert is not None:
        return cert
    if t >= 4:
        cert = _find_medium(ws, t, req, None)
        if cert is not None:
            return cert
    cert = _find_merged_shortcut_cycle(ws, t, req.tiny_search_budget)
    if cert is not None:
        return cert
    if n <= req.small_n_exhaustive:
        return _search_cycle_chord_budget(ws, t, 4)
    return _search_cycle_any(ws, t, req.tiny_search_budget)


def find_tiny_cycles(
    graph: Graph,
    labeling: CycleLabeling,
    req: SpectrumRequest | None = None,
) -> CycleSpectrum:
    """Certificates for lengths 3..7 (lengths above n skipped).

    Prefers witnesses with at most four off-cycle edges; falls back to any
    cycle found by bounded search.  Absent lengths are reported with a
    reason.
    """
    req = req or SpectrumRequest()
    ws = _Workspace(graph, labeling)
    spectrum = CycleSpectrum()
    for t in range(3, min(7, ws.n) + 1):
        cert = _find_tiny(ws, t, req)
        _record(spectrum, ws, t, cert, _tiny_reason(ws, t))
    return spectrum


def _tiny_reason(ws: _Workspace, t: int) -> str:
    if ws.is_bipartite and t % 2 == 1:
        return NO_ODD_CYCLE
    return stage_failure("tiny-search")


def _record(
    spectrum: CycleSpectrum,
    ws: _Workspace,
    t: int,
    cert: CycleCertificate | None,
    reason: str,
) -> None:
    if cert is None:
        spectrum.missing.append(MissingLength(t, reason))
        return
    if verify_certificate(ws.graph, ws.labeling, cert):
        spectrum.found[t] = cert
    else:  # defensive: an unverifiable witness is a search failure, not a result
        spectrum.missing.append(MissingLength(t, stage_failure("verify")))


# -- full spectrum -------------------------------------------------------------------


def find_all_cycles(
    graph: Graph,
    labeling: CycleLabeling,
    req: SpectrumRequest | None = None,
) -> CycleSpectrum:
    """Search every length 3..n, banded by the short/long boundary delta.

    Routes: tiny lengths through :func:`find_tiny_cycles` machinery, lengths
    in [8, delta*n] and [(1-delta)*n, n) through shortcuts, everything else
    through crossings; t = n is witnessed by the labeling itself.  Each band
    keeps the other structures as fallbacks, plus single-chord cycles and an
    exact small-graph pass, so adding edges never loses a length.
    """
    req = req or SpectrumRequest()
    if not labeling.validate_against(graph):
        raise ValueError("labeling does not witness a Hamilton cycle in the graph")
    ws = _Workspace(graph, labeling)
    n = ws.n
    spectrum = CycleSpectrum()
    spectrum.found[n] = hamilton_certificate(n)

    good: frozenset[int] | None = None
    if req.p is not None:
        good, _ = good_directions(graph, labeling, req.beta, req.eps_prime, req.p)

    short_hi = int(req.delta * n)
    long_lo = n - int(req.delta * n)

    for t in range(3, min(7, n - 1) + 1):
        cert = _find_tiny(ws, t, req)
        _record(spectrum, ws, t, cert, _tiny_reason(ws, t))

    for t in range(8, n):
        if t <= short_hi:
            cert = _shortcut_route(ws, t - 8)
            reason = NO_SHORTCUT
            medium_tried = False
        elif t >= long_lo:
            cert = _shortcut_route(ws, n - t, want_long=True)
            reason = NO_SHORTCUT
            medium_tried = False
        else:
            cert = _find_medium(ws, t, req, good)
            reason = NO_CROSSING
            medium_tried = True
        if cert is None:
            cert = _length_fallbacks(ws, t, req, good, medium_tried)
        _record(spectrum, ws, t, cert, reason)
    return spectrum


def _shortcut_route(
    ws: _Workspace, l: int, want_long: bool = False
) -> CycleCertificate | None:
    n = ws.n
    if l < 0 or 2 * l > n or n < l + 8:
        return None
    s = _find_shortcut(ws, l)
    if s is None:
        return None
    short_cert, long_cert = cycles_from_shortcut(s, n)
    return long_cert if want_long else short_cert


def _length_fallbacks(
    ws: _Workspace,
    t: int,
    req: SpectrumRequest,
    good: frozenset[int] | None,
    medium_tried: bool = False,
) -> CycleCertificate | None:
    """Remaining routes for a still-missing length, cheapest first."""
    n = ws.n
    cert = ws.span_certificate(t)
    if cert is not None:
        return cert
    if not medium_tried:
        cert = _find_medium(ws, t, req, good)
        if cert is not None:
            return cert
    for l, want_long in ((t - 8, False), (n - t, True)):
        if 0 <= l and 2 * l <= n:
            cert = _shortcut_route(ws, l, want_long)
            if cert is not None and cert.t == t:
                return cert
    if n <= req.small_n_exhaustive:
        cert = _search_cycle_chord_budget(ws, t, 4)
        if cert is None:
            cert = _search_cycle_chord_budget(ws, t, n)
        return cert
    return None
