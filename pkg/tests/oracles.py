"""Independent brute-force oracles used only by the test suite.

Nothing here shares code with the library's search paths: cycle existence
comes from bitmask dynamic programming, chord-budget lengths from explicit
subset assembly, longest paths from exhaustive DFS.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from itertools import combinations

from pancyclic import CycleLabeling, Graph, Shortcut, VARIANT_I, VARIANT_II
from pancyclic.geometry import validate_shortcut


def cycle_lengths_exact(graph: Graph) -> set[int]:
    """All cycle lengths present in the graph, by (mask, endpoint) DP.

    Exponential in n; intended for n <= 14.
    """
    n = graph.n
    adj = [graph.adjacency_mask(v) for v in range(n)]
    lengths: set[int] = set()
    for s in range(n):
        allowed = ((1 << n) - 1) & ~((1 << s) - 1)
        layer = {1 << s: 1 << s}  # vertex mask -> endpoint set
        while layer:
            nxt: dict[int, int] = defaultdict(int)
            for mask, ends in layer.items():
                size = mask.bit_count()
                em = ends
                while em:
                    low = em & -em
                    e = low.bit_length() - 1
                    em ^= low
                    if size >= 3 and (adj[e] >> s) & 1:
                        lengths.add(size)
                    cand = adj[e] & allowed & ~mask
                    cm = cand
                    while cm:
                        lw = cm & -cm
                        cm ^= lw
                        nxt[mask | lw] |= lw
            layer = nxt
    return lengths


def chord_budget_lengths(
    graph: Graph, labeling: CycleLabeling, budget: int = 4
) -> set[int]:
    """Cycle lengths achievable with the labeled cycle plus at most
    ``budget`` chords, by exhaustive chord-subset assembly."""
    n = graph.n
    canon = labeling.canonical_graph(graph)
    chords = sorted(
        e for e in canon.edges() if (e[1] - e[0]) % n not in (1, n - 1)
    )
    lengths = {n}
    for k in range(1, budget + 1):
        for subset in combinations(chords, k):
            lengths |= _subset_cycle_lengths(subset, n)
    return lengths


def _subset_cycle_lengths(subset: tuple, n: int) -> set[int]:
    """Lengths of simple cycles using exactly this chord set plus arcs."""
    deg = Counter()
    for u, v in subset:
        deg[u] += 1
        deg[v] += 1
    if any(c > 2 for c in deg.values()):
        return set()
    pts = sorted(deg)
    m = len(pts)
    edges = [(u, v, 1, True) for u, v in subset]
    for idx in range(m):
        a, b = pts[idx], pts[(idx + 1) % m]
        w = (b - a) % n
        if w:
            edges.append((a, b, w, False))
    inc = defaultdict(list)
    for eid, (u, v, w, chord) in enumerate(edges):
        inc[u].append((eid, v, w, chord))
        inc[v].append((eid, u, w, chord))
    start = pts[0]
    all_pts = frozenset(pts)
    out: set[int] = set()
    k = len(subset)

    def dfs(node, visited, used_edges, used_chords, weight):
        for eid, other, w, chord in inc[node]:
            if eid in used_edges:
                continue
            if other == start:
                if visited == all_pts and used_chords + chord == k:
                    total = weight + w
                    if total >= 3:
                        out.add(total)
                continue
            if other in visited:
                continue
            dfs(
                other,
                visited | {other},
                used_edges | {eid},
                used_chords + chord,
                weight + w,
            )

    dfs(start, frozenset([start]), frozenset(), 0, 0)
    return out


def longest_path_from(graph: Graph, v: int) -> int:
    """Length in edges of the longest simple path with endpoint v."""
    adj = [graph.adjacency_mask(u) for u in range(graph.n)]
    best = 0

    def dfs(u, mask, depth):
        nonlocal best
        best = max(best, depth)
        cand = adj[u] & ~mask
        while cand:
            low = cand & -cand
            cand ^= low
            dfs(low.bit_length() - 1, mask | low, depth + 1)

    dfs(v, 1 << v, 0)
    return best


def count_shortcuts_brute(graph: Graph, labeling: CycleLabeling, l: int) -> int:
    """Distinct shortcut chord-sets present in the graph, by quadruple loop."""
    n = graph.n
    canon = labeling.canonical_graph(graph)
    seen = set()
    for variant in (VARIANT_I, VARIANT_II):
        for i1 in range(n):
            for i2 in range(n):
                for i3 in range(n):
                    for i4 in range(n):
                        s = Shortcut(variant, i1, i2, i3, i4, l)
                        if not validate_shortcut(s, n):
                            continue
                        chords = s.chords(n)
                        if all(canon.has_edge(*e) for e in chords):
                            seen.add(frozenset(chords))
    return len(seen)


def all_shortcut_chordsets(n: int, l: int) -> tuple[int, int]:
    """(number of valid anchored tuples, number of distinct chord sets)."""
    tuples = 0
    seen = set()
    for variant in (VARIANT_I, VARIANT_II):
        for i1 in range(n):
            for i2 in range(n):
                for i3 in range(n):
                    for i4 in range(n):
                        s = Shortcut(variant, i1, i2, i3, i4, l)
                        if validate_shortcut(s, n):
                            tuples += 1
                            seen.add(frozenset(s.chords(n)))
    return tuples, len(seen)
