"""Edge-deletion adversaries that keep the planted Hamilton cycle intact.

Three structured adversaries realize the tightness constructions (kill all
triangles; cut to bipartite; the odd-n near-bipartite variant), and a
seeded uniform thinner drives threshold sweeps.  Every adversary returns a
subgraph that still contains the witnessed cycle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .graphs import CycleLabeling, Graph, canonical_edge
from .random_graphs import RngSeed

TRIANGLE_BREAKER = "triangle-breaker"
BIPARTITE_EVEN = "bipartite-even"
NEAR_BIPARTITE_ODD = "near-bipartite-odd"
UNIFORM_THIN = "uniform-thin"

ADVERSARY_KINDS = (TRIANGLE_BREAKER, BIPARTITE_EVEN, NEAR_BIPARTITE_ODD, UNIFORM_THIN)


@dataclass(frozen=True)
class AdversarySpec:
    kind: str
    keep_fraction: float = 1.0

    def __post_init__(self):
        if self.kind not in ADVERSARY_KINDS:
            raise ValueError(f"unknown adversary kind {self.kind!r}")
        if self.kind == UNIFORM_THIN and not (0.0 < self.keep_fraction <= 1.0):
            raise ValueError("keep_fraction must be in (0, 1]")


def _require_cycle(graph: Graph, labeling: CycleLabeling) -> None:
    if not labeling.validate_against(graph):
        raise ValueError("labeling does not witness a Hamilton cycle in the graph")


def adversary_triangle_breaker(graph: Graph, labeling: CycleLabeling) -> Graph:
    """Delete one non-cycle edge from every triangle until none remain.

    Triangles are processed in lexicographic vertex-triple order; within a
    triangle the lexicographically largest deletable edge goes.  Output is
    triangle-free and still contains the witnessed cycle (n > 3 guarantees
    every triangle has a deletable edge).
    """
    _require_cycle(graph, labeling)
    n = graph.n
    if n <= 3:
        raise ValueError("need n > 3")
    adj = [graph.adjacency_mask(v) for v in range(n)]

    def is_cycle_edge(u: int, v: int) -> bool:
        return labeling.is_cycle_edge(u, v)

    changed = True
    while changed:
        changed = False
        for u in range(n):
            rest_u = adj[u] >> (u + 1)
            while rest_u:
                low = rest_u & -rest_u
                v = u + 1 + low.bit_length() - 1
                rest_u ^= low
                if not (adj[u] >> v) & 1:
                    continue  # the row snapshot can hold already-deleted pairs
                common = (adj[u] & adj[v]) >> (v + 1)
                while common:
                    lw = common & -common
                    w = v + 1 + lw.bit_length() - 1
                    common ^= lw
                    # delete the lexicographically largest non-cycle edge
                    for a, b in ((v, w), (u, w), (u, v)):
                        if not is_cycle_edge(a, b):
                            adj[a] &= ~(1 << b)
                            adj[b] &= ~(1 << a)
                            changed = True
                            break
                    else:  # pragma: no cover - impossible for n > 3
                        raise RuntimeError("triangle with all edges on the cycle")
                    if not (adj[u] >> v) & 1:
                        break
    edges = []
    for u in range(n):
        rest = adj[u] >> (u + 1)
        while rest:
            low = rest & -rest
            edges.append((u, u + 1 + low.bit_length() - 1))
            rest ^= low
    return Graph(n, edges)


def adversary_bipartite_even(graph: Graph, labeling: CycleLabeling) -> Graph:
    """Remove all edges inside either parity class of the cycle 2-coloring.

    Requires even n; the output is bipartite and contains the cycle.
    """
    _require_cycle(graph, labeling)
    if graph.n % 2 != 0:
        raise ValueError("bipartite adversary needs even n")
    pos = labeling.position
    return Graph(
        graph.n,
        ((u, v) for u, v in graph.edges() if (pos[u] + pos[v]) % 2 == 1),
    )


def adversary_near_bipartite_odd(graph: Graph, labeling: CycleLabeling) -> Graph:
    """Odd-n variant: one monochromatic cycle edge e survives in class V1.

    The cycle 2-coloring by position parity leaves exactly one same-class
    cycle edge, between positions n-1 and 0; that edge is e = xy.  Remove
    all edges within V1 except e, all edges within V2, and all edges at x
    or y except e and their two other cycle edges.  Output is triangle-free,
    Hamiltonian, and every odd cycle in it passes through e.
    """
    _require_cycle(graph, labeling)
    n = graph.n
    if n % 2 != 1:
        raise ValueError("near-bipartite adversary needs odd n")
    pos = labeling.position
    order = labeling.order
    x, y = order[0], order[n - 1]
    e = canonical_edge(x, y)
    e_x = canonical_edge(order[0], order[1])
    e_y = canonical_edge(order[n - 2], order[n - 1])
    protected = {e, e_x, e_y}

    def keep(u: int, v: int) -> bool:
        edge = canonical_edge(u, v)
        if edge in protected:
            return True
        if u in (x, y) or v in (x, y):
            return False
        same = (pos[u] % 2) == (pos[v] % 2)
        return not same

    return Graph(n, (ed for ed in graph.edges() if keep(*ed)))


def adversary_uniform_thin(
    graph: Graph, labeling: CycleLabeling, keep_fraction: float, seed: RngSeed
) -> Graph:
    """Keep all cycle edges plus a uniform random set of chords, hitting the
    total target ceil(keep_fraction * e(G)), clamped to at least n edges.

    The kept chord set is a prefix of one seeded permutation, so for a fixed
    seed the kept sets are nested as keep_fraction grows.
    """
    _require_cycle(graph, labeling)
    if not (0.0 < keep_fraction <= 1.0):
        raise ValueError("keep_fraction must be in (0, 1]")
    n = graph.n
    chords = sorted(e for e in graph.edges() if not labeling.is_cycle_edge(*e))
    target_total = max(n, math.ceil(keep_fraction * graph.edge_count))
    n_chords = min(len(chords), max(0, target_total - n))
    rng = seed.generator()
    perm = rng.permutation(len(chords))
    kept = [chords[j] for j in perm[:n_chords]]
    cycle_edges = [
        canonical_edge(labeling.order[i], labeling.order[(i + 1) % n])
        for i in range(n)
    ]
    return Graph(n, cycle_edges + kept)


def apply_adversary(
    spec: AdversarySpec,
    graph: Graph,
    labeling: CycleLabeling,
    seed: RngSeed | None = None,
) -> tuple[Graph, dict]:
    """Run the adversary and produce its JSON-ready log record."""
    if spec.kind == TRIANGLE_BREAKER:
        out = adversary_triangle_breaker(graph, labeling)
    elif spec.kind == BIPARTITE_EVEN:
        out = adversary_bipartite_even(graph, labeling)
    elif spec.kind == NEAR_BIPARTITE_ODD:
        out = adversary_near_bipartite_odd(graph, labeling)
    else:
        if seed is None:
            raise ValueError("uniform-thin adversary needs a seed")
        out = adversary_uniform_thin(graph, labeling, spec.keep_fraction, seed)
    record = {
        "kind": spec.kind,
        "removed": graph.edge_count - out.edge_count,
        "kept": out.edge_count,
        "seed": None if seed is None else [seed.seed, seed.stream_id],
    }
    return out, record
