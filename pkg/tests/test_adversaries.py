"""Edge-deletion adversaries: structure of the outputs and determinism."""

import math

import pytest

from pancyclic import (
    AdversarySpec,
    CycleLabeling,
    GnpParams,
    Graph,
    RngSeed,
    UNIFORM_THIN,
    adversary_bipartite_even,
    adversary_near_bipartite_odd,
    adversary_triangle_breaker,
    adversary_uniform_thin,
    apply_adversary,
    plant_hamilton,
)
from pancyclic.spectrum import _is_bipartite


def has_triangle(g: Graph) -> bool:
    for u in range(g.n):
        au = g.adjacency_mask(u)
        rest = au >> (u + 1)
        while rest:
            low = rest & -rest
            v = u + 1 + low.bit_length() - 1
            rest ^= low
            if (au & g.adjacency_mask(v)) >> (v + 1):
                return True
    return False


def cycle_edges(lab: CycleLabeling) -> list[tuple[int, int]]:
    n = lab.n
    return [
        tuple(sorted((lab.order[i], lab.order[(i + 1) % n]))) for i in range(n)
    ]


def test_triangle_breaker_leaves_plain_cycle():
    g = Graph.cycle(9)
    lab = CycleLabeling.identity(9)
    assert adversary_triangle_breaker(g, lab) == g


def test_triangle_breaker_single_chord():
    g = Graph.cycle(5).with_edges([(0, 2)])
    out = adversary_triangle_breaker(g, CycleLabeling.identity(5))
    assert out == Graph.cycle(5)


def test_triangle_breaker_structure_and_budget():
    n = 400
    params = GnpParams(n=n, p=n**-0.6)
    g, lab = plant_hamilton(params, RngSeed(11))
    out = adversary_triangle_breaker(g, lab)
    assert not has_triangle(out)
    assert lab.validate_against(out)
    removed = g.edge_count - out.edge_count
    assert removed / g.edge_count <= 0.15


def test_triangle_breaker_deterministic():
    g, lab = plant_hamilton(GnpParams(n=60, p=0.3), RngSeed(4))
    assert adversary_triangle_breaker(g, lab) == adversary_triangle_breaker(g, lab)


def _reference_triangle_breaker(g: Graph, lab: CycleLabeling) -> Graph:
    # restart-from-scratch form of the same rule: after every deletion,
    # rescan for the lexicographically first remaining triangle
    adj = {u: set(g.neighbors(u)) for u in range(g.n)}
    while True:
        hit = None
        for a in range(g.n):
            for b in sorted(adj[a]):
                if b <= a:
                    continue
                for c in sorted(adj[a] & adj[b]):
                    if c > b:
                        hit = (a, b, c)
                        break
                if hit:
                    break
            if hit:
                break
        if hit is None:
            break
        a, b, c = hit
        for x, y in ((b, c), (a, c), (a, b)):
            if not lab.is_cycle_edge(x, y):
                adj[x].discard(y)
                adj[y].discard(x)
                break
    return Graph(g.n, ((u, v) for u in adj for v in adj[u] if u < v))


def test_triangle_breaker_matches_reference_rule():
    rng_seeds = range(12)
    for seed in rng_seeds:
        g, lab = plant_hamilton(GnpParams(n=28, p=0.35), RngSeed(seed, 77))
        assert adversary_triangle_breaker(g, lab) == _reference_triangle_breaker(g, lab)


def test_bipartite_even_examples():
    g = Graph.cycle(8)
    lab = CycleLabeling.identity(8)
    assert adversary_bipartite_even(g, lab) == g
    out = adversary_bipartite_even(Graph.complete(4), CycleLabeling.identity(4))
    assert out == Graph.cycle(4)
    with pytest.raises(ValueError):
        adversary_bipartite_even(Graph.cycle(7), CycleLabeling.identity(7))


def test_bipartite_even_structure_and_fraction():
    n = 1000
    g, lab = plant_hamilton(GnpParams(n=n, p=3 * n**-0.5), RngSeed(21))
    out = adversary_bipartite_even(g, lab)
    assert _is_bipartite(out)
    assert lab.validate_against(out)
    ce = set(cycle_edges(lab))
    chords_before = g.edge_count - len(ce)
    chords_after = out.edge_count - len(ce)
    assert 0.45 <= chords_after / chords_before <= 0.55


def test_near_bipartite_odd_examples():
    g = Graph.cycle(9)
    lab = CycleLabeling.identity(9)
    assert adversary_near_bipartite_odd(g, lab) == g
    with pytest.raises(ValueError):
        adversary_near_bipartite_odd(Graph.cycle(8), CycleLabeling.identity(8))


def test_near_bipartite_odd_structure():
    n = 1001
    g, lab = plant_hamilton(GnpParams(n=n, p=3 * n**-0.5), RngSeed(31))
    out = adversary_near_bipartite_odd(g, lab)
    assert not has_triangle(out)
    assert lab.validate_against(out)
    assert out.edge_count >= 0.45 * g.edge_count
    # exactly one surviving edge inside either parity class
    mono = [
        (u, v)
        for u, v in out.edges()
        if (lab.position[u] % 2) == (lab.position[v] % 2)
    ]
    assert mono == [tuple(sorted((lab.order[0], lab.order[n - 1])))]


def test_near_bipartite_odd_cycles_through_e():
    # removing the special edge leaves a bipartite graph
    n = 101
    g, lab = plant_hamilton(GnpParams(n=n, p=3 * n**-0.5), RngSeed(5))
    out = adversary_near_bipartite_odd(g, lab)
    e = tuple(sorted((lab.order[0], lab.order[n - 1])))
    assert _is_bipartite(out.without_edges([e]))


def test_uniform_thin_extremes_and_nesting():
    g, lab = plant_hamilton(GnpParams(n=80, p=0.4), RngSeed(9))
    full = adversary_uniform_thin(g, lab, 1.0, RngSeed(77))
    assert full == g
    tiny = adversary_uniform_thin(g, lab, 1e-9, RngSeed(77))
    assert tiny == Graph.cycle(80)
    prev_edges: set = set()
    for keep in (0.2, 0.4, 0.6, 0.8):
        out = adversary_uniform_thin(g, lab, keep, RngSeed(77))
        assert out.edge_count == max(80, math.ceil(keep * g.edge_count))
        edges = set(out.edges())
        assert prev_edges <= edges
        prev_edges = edges


def test_uniform_thin_keeps_cycle():
    g, lab = plant_hamilton(GnpParams(n=64, p=0.5), RngSeed(10))
    out = adversary_uniform_thin(g, lab, 0.3, RngSeed(3))
    assert lab.validate_against(out)


def test_apply_adversary_record():
    g, lab = plant_hamilton(GnpParams(n=40, p=0.5), RngSeed(1))
    spec = AdversarySpec(UNIFORM_THIN, 0.5)
    out, record = apply_adversary(spec, g, lab, RngSeed(8, 2))
    assert record["kind"] == UNIFORM_THIN
    assert record["kept"] == out.edge_count
    assert record["removed"] == g.edge_count - out.edge_count
    assert record["seed"] == [8, 2]


def test_adversary_requires_cycle_witness():
    g = Graph.complete(6).without_edges([(0, 1)])
    with pytest.raises(ValueError):
        adversary_triangle_breaker(g, CycleLabeling.identity(6))


def test_adversary_spec_validation():
    with pytest.raises(ValueError):
        AdversarySpec("unknown")
    with pytest.raises(ValueError):
        AdversarySpec(UNIFORM_THIN, 0.0)
