"""Shortcut hypergraph enumeration, density, and boundedness estimates."""

import numpy as np
import pytest

from pancyclic import (
    CycleLabeling,
    GnpParams,
    Graph,
    RngSeed,
    build_shortcut_hypergraph,
    check_density,
    count_shortcuts,
    estimate_boundedness,
    graph_edge_subset,
    sample_gnp,
)
from pancyclic.hypergraph import GuardExceeded, pair_index, sampled_degrees

from oracles import all_shortcut_chordsets, count_shortcuts_brute


def test_vertex_count_formula():
    for n in (12, 20, 31):
        h = build_shortcut_hypergraph(n, 0)
        assert h.vertex_count == (n * n - n) // 2
        assert h.edge_count <= n**4


def test_guard():
    with pytest.raises(GuardExceeded):
        build_shortcut_hypergraph(70, 0)
    with pytest.raises(GuardExceeded):
        count_shortcuts(Graph.complete(70), CycleLabeling.identity(70), 0)
    # explicit override allowed
    build_shortcut_hypergraph(61, 0, guard_n=61)


def test_enumeration_matches_brute_force():
    for n, l in ((10, 1), (12, 2), (13, 0), (14, 3)):
        tuples, sets_ = all_shortcut_chordsets(n, l)
        h = build_shortcut_hypergraph(n, l)
        assert h.edge_count == sets_
        # symmetric duplicate descriptions exist for some (n, l)
        assert tuples >= sets_


def test_minimum_size_threshold():
    # below 8 distinct clockwise points no shortcut fits
    assert build_shortcut_hypergraph(7, 0).edge_count == 0
    assert build_shortcut_hypergraph(8, 0).edge_count > 0


def test_hyperedges_unique():
    h = build_shortcut_hypergraph(16, 1)
    rows = [tuple(r) for r in h.hyperedges.tolist()]
    assert len(rows) == len(set(rows))
    assert all(list(r) == sorted(r) for r in rows)


def test_count_shortcuts_complete_equals_hypergraph():
    for n in (10, 14, 18, 22, 26, 30):
        for l in range(0, n // 4 + 1, max(1, n // 8)):
            expected = build_shortcut_hypergraph(n, l).edge_count
            got = count_shortcuts(Graph.complete(n), CycleLabeling.identity(n), l)
            assert got == expected, (n, l)


def test_count_shortcuts_cycle_is_zero():
    assert count_shortcuts(Graph.cycle(20), CycleLabeling.identity(20), 0) == 0


def test_count_shortcuts_random_vs_brute():
    rng = np.random.default_rng(5)
    for trial in range(5):
        n = int(rng.integers(10, 15))
        g = sample_gnp(GnpParams(n=n, p=float(rng.uniform(0.3, 0.8))), RngSeed(trial))
        lab = CycleLabeling(rng.permutation(n).tolist())
        for l in (0, 1, 2):
            assert count_shortcuts(g, lab, l) == count_shortcuts_brute(g, lab, l)


def test_density_full_subset_passes():
    h = build_shortcut_hypergraph(20, 0)
    rep = check_density(h, np.arange(h.vertex_count), 0.3)
    assert rep.passed
    assert rep.induced_count == h.edge_count


def test_density_rejects_small_subset():
    h = build_shortcut_hypergraph(20, 0)
    with pytest.raises(ValueError):
        check_density(h, np.arange(10), 0.3)


def test_density_dense_graph_subset():
    n = 30
    rng = np.random.default_rng(8)
    iu, ju = np.triu_indices(n, k=1)
    pick = rng.choice(len(iu), size=int(0.8 * len(iu)), replace=False)
    g = Graph.from_edge_array(n, np.stack([iu[pick], ju[pick]], axis=1))
    lab = CycleLabeling.identity(n)
    h = build_shortcut_hypergraph(n, 0)
    rep = check_density(h, graph_edge_subset(g, lab), 0.3)
    assert rep.passed
    # induced hyperedges are exactly the graph's shortcuts
    assert rep.induced_count == count_shortcuts(g, lab, 0)


def test_boundedness_q1_deterministic():
    h = build_shortcut_hypergraph(14, 0)
    est = estimate_boundedness(h, 14**-0.5, 1.0, 1, 1, RngSeed(0))
    # at q=1, deg_i(v, V\{v}) is the plain hypergraph degree for i <= 3
    full = np.ones(h.vertex_count, dtype=bool)
    for i in (1, 2, 3):
        deg = sampled_degrees(h, full, i)
        expected = np.bincount(
            h.hyperedges.reshape(-1), minlength=h.vertex_count
        )
        assert np.array_equal(deg, expected)
    expected_total = float((np.asarray(expected, dtype=np.float64) ** 2).sum())
    assert est.sample_mean == pytest.approx(expected_total)
    assert est.sample_se == 0.0


def test_boundedness_estimate_stability():
    h = build_shortcut_hypergraph(24, 0)
    p = 24**-0.5
    a = estimate_boundedness(h, p, p, 1, 60, RngSeed(1))
    b = estimate_boundedness(h, p, p, 1, 60, RngSeed(2))
    assert a.estimated_K > 0 and b.estimated_K > 0
    assert abs(a.estimated_K - b.estimated_K) <= 0.2 * max(a.estimated_K, b.estimated_K)


def test_boundedness_validates_inputs():
    h = build_shortcut_hypergraph(12, 0)
    with pytest.raises(ValueError):
        estimate_boundedness(h, 0.5, 0.4, 1, 10, RngSeed(0))
    with pytest.raises(ValueError):
        estimate_boundedness(h, 0.1, 0.5, 4, 10, RngSeed(0))
    with pytest.raises(ValueError):
        estimate_boundedness(h, 0.1, 0.5, 1, 0, RngSeed(0))


def test_sampled_degree_monotone_in_subset():
    h = build_shortcut_hypergraph(16, 0)
    rng = np.random.default_rng(3)
    small = rng.random(h.vertex_count) < 0.3
    large = small | (rng.random(h.vertex_count) < 0.3)
    for i in (1, 2, 3):
        d_small = sampled_degrees(h, small, i)
        d_large = sampled_degrees(h, large, i)
        assert np.all(d_small <= d_large)


def test_relative_tuples_are_valid_shortcuts():
    from pancyclic import Shortcut, VARIANT_I, VARIANT_II
    from pancyclic.geometry import validate_shortcut
    from pancyclic.hypergraph import _relative_tuples

    for n, l in ((12, 0), (14, 2), (15, 3)):
        for variant in (VARIANT_I, VARIANT_II):
            for t2, t3, t4 in _relative_tuples(n, l, variant).tolist():
                s = Shortcut(variant, 0, t2 % n, t3 % n, t4 % n, l)
                assert validate_shortcut(s, n), (variant, n, l, t2, t3, t4)


def test_pair_index_bijection():
    n = 9
    seen = set()
    for u in range(n):
        for v in range(u + 1, n):
            idx = int(pair_index(np.array([u]), np.array([v]), n)[0])
            assert idx not in seen
            seen.add(idx)
    assert seen == set(range(n * (n - 1) // 2))
