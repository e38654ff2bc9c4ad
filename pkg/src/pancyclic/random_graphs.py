"""Seeded binomial random graphs, Hamilton-cycle planting, and the two-round
edge-exposure coupling.

All randomness flows through :class:`RngSeed`; identical (params, seed) pairs
produce identical graphs regardless of platform or call order, which is what
makes every experiment in this package replayable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graphs import CycleLabeling, Graph


@dataclass(frozen=True)
class RngSeed:
    """A 64-bit base seed plus a per-trial stream index."""

    seed: int
    stream_id: int = 0

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.stream_id,))
        return np.random.Generator(np.random.PCG64(ss))

    def child(self, tag: int) -> "RngSeed":
        """Derived seed for a sub-step of the same trial."""
        return RngSeed(splitmix64(self.seed ^ (0x9E3779B97F4A7C15 * (tag + 1))),
                       self.stream_id)


def splitmix64(x: int) -> int:
    """SplitMix64 finalizer; used to derive independent trial seeds."""
    x = (x + 0x9E3779B97F4A7C15) & 0xFFFFFFFFFFFFFFFF
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
    return z ^ (z >> 31)


@dataclass(frozen=True)
class GnpParams:
    """Binomial model parameters; p may be given directly or as C * n^(-1/2)."""

    n: int
    p: float | None = None
    C: float | None = None

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("need n >= 3")
        if self.p is None and self.C is None:
            raise ValueError("give either p or C")
        if self.p is not None and not (0.0 <= self.p <= 1.0):
            raise ValueError(f"p={self.p} outside [0, 1]")
        if self.C is not None and self.C <= 0:
            raise ValueError(f"C={self.C} must be positive")

    def resolve_p(self) -> float:
        if self.p is not None:
            return self.p
        return min(1.0, self.C / math.sqrt(self.n))


def _pair_array(n: int) -> tuple[np.ndarray, np.ndarray]:
    return np.triu_indices(n, k=1)


def sample_gnp(params: GnpParams, seed: RngSeed) -> Graph:
    """Each of the C(n,2) pairs appears independently with probability p."""
    n = params.n
    p = params.resolve_p()
    rng = seed.generator()
    iu, ju = _pair_array(n)
    mask = rng.random(len(iu)) < p
    arr = np.stack([iu[mask], ju[mask]], axis=1)
    return Graph.from_edge_array(n, arr)


def plant_hamilton(params: GnpParams, seed: RngSeed) -> tuple[Graph, CycleLabeling]:
    """A G(n,p) sample unioned with the cycle 0-1-...-(n-1)-0.

    The identity labeling witnesses Hamiltonicity, which every downstream
    search takes as given.
    """
    g = sample_gnp(params, seed)
    n = params.n
    planted = g.with_edges(((i, (i + 1) % n) for i in range(n)))
    return planted, CycleLabeling.identity(n)


def subsample_coupling(graph: Graph, q: float, seed: RngSeed) -> Graph:
    """Keep each edge independently with probability q.

    Composing sample_gnp(p) with subsample_coupling(q) is distributed as a
    direct sample at density p*q; the two-round exposure underlying the
    density-monotonicity reduction.
    """
    if not (0.0 <= q <= 1.0):
        raise ValueError(f"q={q} outside [0, 1]")
    arr = graph.edge_array()
    if len(arr) == 0:
        return Graph(graph.n, ())
    rng = seed.generator()
    mask = rng.random(len(arr)) < q
    return Graph.from_edge_array(graph.n, arr[mask])


def chernoff_tail(mean: float, eps: float) -> float:
    """Explicit two-sided binomial tail bound exp(-eps^2 * mean / 3).

    Valid for 0 < eps <= 1; used to size statistical test tolerances.
    """
    if mean <= 0:
        raise ValueError("mean must be positive")
    if eps <= 0:
        raise ValueError("eps must be positive")
    return math.exp(-(eps * eps) * mean / 3.0)
