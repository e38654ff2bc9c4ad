"""The 4-uniform hypergraph of shortcut configurations, materialized.

Hypergraph vertices are the edges of the complete graph (upper-triangle
indexed); each hyperedge is the 4-chord set of one valid gap-l shortcut.
This module enumerates it exactly (guarded, the edge count grows like n^4),
counts the configurations surviving inside a given graph, and runs the two
executable hypothesis checks: subset density and the sampled second-moment
boundedness inequality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import VARIANT_I, VARIANT_II
from .graphs import CycleLabeling, Graph
from .random_graphs import RngSeed

DEFAULT_GUARD_N = 60


class GuardExceeded(ValueError):
    """Enumeration request above the configured size guard."""

    def __init__(self, n: int, guard: int):
        self.n = n
        self.guard = guard
        super().__init__(
            f"n={n} exceeds the enumeration guard {guard}; "
            f"raise guard_n explicitly to proceed"
        )


def pair_index(u: np.ndarray, v: np.ndarray, n: int) -> np.ndarray:
    """Row-major upper-triangle index of the pair (u, v), u < v."""
    lo = np.minimum(u, v)
    hi = np.maximum(u, v)
    return lo * (2 * n - lo - 1) // 2 + (hi - lo - 1)


import functools


@functools.lru_cache(maxsize=32)
def _relative_tuples_cached(n: int, l: int, variant: str) -> np.ndarray:
    t2 = np.arange(n)[:, None, None]
    t3 = np.arange(n)[None, :, None]
    t4 = np.arange(n)[None, None, :]
    base = t2 >= 2
    if variant == VARIANT_I:
        ok = base & (t3 >= t2 + 2) & (t4 >= t3 + 2) & (t4 <= n - 2 - l)
    else:
        ok = base & (t4 >= t2 + 2) & (t3 >= t4 + l + 2) & (t3 <= n - 2)
    idx = np.argwhere(ok)
    idx.flags.writeable = False
    return idx.astype(np.int64)


def _relative_tuples(n: int, l: int, variant: str) -> np.ndarray:
    """All (t2, t3, t4) offsets from i1 admitting the variant's clockwise
    order; independent of the anchor."""
    return _relative_tuples_cached(n, l, variant)


def _chord_columns(
    n: int, l: int, i1: np.ndarray, t2: np.ndarray, t3: np.ndarray, t4: np.ndarray
) -> tuple[np.ndarray, ...]:
    """Endpoint arrays of the four chords for anchored tuples."""
    i2 = (i1 + t2) % n
    i3 = (i1 + t3) % n
    i4 = (i1 + t4) % n
    return (
        i1,
        i3,
        (i1 + 1) % n,
        i4,
        i2,
        (i4 + l + 1) % n,
        (i2 + 1) % n,
        (i3 + 1) % n,
    )


def _enumerate_rows(
    n: int, l: int, chord_matrix: np.ndarray | None
) -> np.ndarray:
    """Sorted 4-column array of chord pair-indices, one row per anchored
    tuple (not yet deduplicated across symmetric descriptions).

    Vectorized over all n anchors at once per variant.
    """
    rows = []
    anchors = np.arange(n, dtype=np.int64)[:, None]
    for variant in (VARIANT_I, VARIANT_II):
        rel = _relative_tuples(n, l, variant)
        if len(rel) == 0:
            continue
        t2, t3, t4 = rel[:, 0][None, :], rel[:, 1][None, :], rel[:, 2][None, :]
        i1 = np.broadcast_to(anchors, (n, rel.shape[0]))
        cols = _chord_columns(
            n, l, i1, np.broadcast_to(t2, i1.shape),
            np.broadcast_to(t3, i1.shape), np.broadcast_to(t4, i1.shape)
        )
        cols = tuple(c.reshape(-1) for c in cols)
        if chord_matrix is not None:
            present = (
                chord_matrix[cols[0], cols[1]]
                & chord_matrix[cols[2], cols[3]]
                & chord_matrix[cols[4], cols[5]]
                & chord_matrix[cols[6], cols[7]]
            )
            if not present.any():
                continue
            cols = tuple(c[present] for c in cols)
        ids = np.stack(
            [
                pair_index(cols[0], cols[1], n),
                pair_index(cols[2], cols[3], n),
                pair_index(cols[4], cols[5], n),
                pair_index(cols[6], cols[7], n),
            ],
            axis=1,
        )
        rows.append(np.sort(ids, axis=1))
    if not rows:
        return np.empty((0, 4), dtype=np.int64)
    return np.concatenate(rows, axis=0)


def _pack_rows(rows: np.ndarray, n: int) -> np.ndarray:
    """Pack a sorted 4-id row into one int64 key for fast dedup."""
    width = n * (n - 1) // 2
    assert width < (1 << 15)
    return (
        (rows[:, 0] << 45) | (rows[:, 1] << 30) | (rows[:, 2] << 15) | rows[:, 3]
    )


def _unique_rows(rows: np.ndarray, n: int) -> np.ndarray:
    if len(rows) == 0:
        return rows
    keys = _pack_rows(rows, n)
    _, idx = np.unique(keys, return_index=True)
    return rows[np.sort(idx)]


@dataclass(frozen=True)
class ShortcutHypergraph:
    """Vertices: all C(n,2) edges of the complete graph; hyperedges: the
    distinct 4-chord sets forming valid gap-l shortcuts."""

    n: int
    l: int
    hyperedges: np.ndarray  # (M, 4) sorted pair-indices, unique rows

    @property
    def vertex_count(self) -> int:
        return self.n * (self.n - 1) // 2

    @property
    def edge_count(self) -> int:
        return len(self.hyperedges)

    @property
    def density_constant(self) -> float:
        """Measured c = |E| / n^4."""
        return self.edge_count / float(self.n**4)


def build_shortcut_hypergraph(
    n: int, l: int, guard_n: int = DEFAULT_GUARD_N
) -> ShortcutHypergraph:
    """Exhaustively enumerate all gap-l shortcuts of the complete graph."""
    if n > guard_n:
        raise GuardExceeded(n, guard_n)
    if l < 0 or 2 * l > n:
        raise ValueError(f"gap l={l} outside [0, n/2]")
    rows = _enumerate_rows(n, l, None)
    return ShortcutHypergraph(n=n, l=l, hyperedges=_unique_rows(rows, n))


def count_shortcuts(
    graph: Graph, labeling: CycleLabeling, l: int, guard_n: int = DEFAULT_GUARD_N
) -> int:
    """Exact number of distinct gap-l shortcuts whose four chords all lie in
    the graph (off the labeled cycle)."""
    n = graph.n
    if n > guard_n:
        raise GuardExceeded(n, guard_n)
    if l < 0 or 2 * l > n:
        raise ValueError(f"gap l={l} outside [0, n/2]")
    canon = labeling.canonical_graph(graph)
    mat = canon.adjacency_matrix()
    idx = np.arange(n)
    nxt = (idx + 1) % n
    mat[idx, nxt] = False
    mat[nxt, idx] = False
    rows = _enumerate_rows(n, l, mat)
    if len(rows) == 0:
        return 0
    return len(np.unique(_pack_rows(rows, n)))


@dataclass(frozen=True)
class DensityReport:
    alpha: float
    eps: float
    f_eps: float
    subset_size: int
    induced_count: int
    total_count: int
    passed: bool


def density_requirement(eps: float) -> float:
    """The density function f(eps) = (eps/16)^8."""
    return (eps / 16.0) ** 8


def check_density(
    hyper: ShortcutHypergraph, subset: np.ndarray, eps: float
) -> DensityReport:
    """Count hyperedges fully inside the vertex subset and compare against
    f(eps) * |E|; the subset must have at least (1/2 + eps)|V| vertices."""
    mask = np.zeros(hyper.vertex_count, dtype=bool)
    mask[np.asarray(subset, dtype=np.int64)] = True
    size = int(mask.sum())
    needed = (0.5 + eps) * hyper.vertex_count
    if size < needed:
        raise ValueError(
            f"subset of {size} vertices is below the (1/2 + eps) threshold "
            f"{needed:.1f}"
        )
    if hyper.edge_count:
        induced = int(mask[hyper.hyperedges].all(axis=1).sum())
    else:
        induced = 0
    f_eps = density_requirement(eps)
    return DensityReport(
        alpha=0.5,
        eps=eps,
        f_eps=f_eps,
        subset_size=size,
        induced_count=induced,
        total_count=hyper.edge_count,
        passed=induced >= f_eps * hyper.edge_count,
    )


def graph_edge_subset(graph: Graph, labeling: CycleLabeling) -> np.ndarray:
    """Pair-indices of a graph's edges under the labeling; the natural
    subset to feed into check_density."""
    canon = labeling.canonical_graph(graph)
    arr = canon.edge_array()
    return pair_index(arr[:, 0], arr[:, 1], graph.n)


def sampled_degrees(
    hyper: ShortcutHypergraph, sampled: np.ndarray, i: int
) -> np.ndarray:
    """deg_i(v, U \\ {v}) for every hypergraph vertex v, where U is the
    sampled vertex set: hyperedges through v with at least i other sampled
    vertices."""
    if not 1 <= i <= 3:
        raise ValueError("i must be in {1, 2, 3}")
    deg = np.zeros(hyper.vertex_count, dtype=np.int64)
    rows = hyper.hyperedges
    if len(rows) == 0:
        return deg
    inside = sampled[rows].sum(axis=1)
    for c in range(4):
        vid = rows[:, c]
        cnt = inside - sampled[vid]
        hits = vid[cnt >= i]
        if len(hits):
            deg += np.bincount(hits, minlength=hyper.vertex_count)
    return deg


@dataclass(frozen=True)
class BoundednessEstimate:
    i: int
    q: float
    trials: int
    sample_mean: float
    sample_se: float
    scale: float  # q^(2i) |E|^2 / |V|
    estimated_K: float


def estimate_boundedness(
    hyper: ShortcutHypergraph,
    p: float,
    q: float,
    i: int,
    trials: int,
    seed: RngSeed,
) -> BoundednessEstimate:
    """Monte-Carlo estimate of E[sum_v deg_i(v, V_q)^2] against the
    boundedness scale q^(2i) |E|^2 / |V|."""
    if trials < 1:
        raise ValueError("need at least one trial")
    if not (p <= q <= 1.0):
        raise ValueError(f"q={q} outside [p, 1]")
    rng = seed.generator()
    totals = np.empty(trials, dtype=np.float64)
    for trial in range(trials):
        sampled = rng.random(hyper.vertex_count) < q
        deg = sampled_degrees(hyper, sampled, i)
        totals[trial] = float((deg.astype(np.float64) ** 2).sum())
    mean = float(totals.mean())
    se = float(totals.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
    scale = (q ** (2 * i)) * hyper.edge_count**2 / hyper.vertex_count
    return BoundednessEstimate(
        i=i,
        q=q,
        trials=trials,
        sample_mean=mean,
        sample_se=se,
        scale=scale,
        estimated_K=mean / scale if scale > 0 else float("inf"),
    )


