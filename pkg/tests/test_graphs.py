"""Graph and labeling value types plus their text formats."""

import numpy as np
import pytest

from pancyclic import CycleLabeling, Graph
from pancyclic.graphs import (
    canonical_edge,
    read_edge_list,
    read_labeling,
    write_edge_list,
    write_labeling,
)


def test_graph_basics():
    g = Graph(5, [(0, 1), (1, 0), (3, 2)])
    assert g.edge_count == 2
    assert g.has_edge(1, 0) and g.has_edge(2, 3)
    assert not g.has_edge(0, 2)
    assert g.degree(1) == 1
    assert sorted(g.edges()) == [(0, 1), (2, 3)]


def test_graph_rejects_bad_input():
    with pytest.raises(ValueError):
        Graph(2, [])
    with pytest.raises(ValueError):
        Graph(5, [(1, 1)])
    with pytest.raises(ValueError):
        Graph(5, [(0, 7)])
    with pytest.raises(ValueError):
        canonical_edge(3, 3)


def test_complete_and_cycle_constructors():
    k5 = Graph.complete(5)
    assert k5.edge_count == 10
    c7 = Graph.cycle(7)
    assert c7.edge_count == 7
    assert all(c7.degree(v) == 2 for v in range(7))


def test_induced_and_updates():
    g = Graph.complete(5)
    sub = g.induced([0, 1, 2])
    assert sub.edge_count == 3
    assert sub.degree(4) == 0
    assert g.without_edges([(0, 1)]).edge_count == 9
    assert g.with_edges([(0, 1)]).edge_count == 10


def test_edge_array_matches_edges():
    g = Graph(6, [(5, 0), (2, 4), (1, 2)])
    arr = g.edge_array()
    assert arr.shape == (3, 2)
    assert [tuple(r) for r in arr.tolist()] == sorted(g.edges())


def test_labeling_validates_permutation():
    with pytest.raises(ValueError):
        CycleLabeling([0, 0, 1])
    lab = CycleLabeling([2, 0, 1])
    assert lab.order == (1, 2, 0)


def test_labeling_witnesses_cycle():
    g = Graph.cycle(6)
    assert CycleLabeling.identity(6).validate_against(g)
    assert not CycleLabeling([0, 2, 4, 1, 3, 5]).validate_against(g)


def test_canonical_graph_moves_cycle_to_consecutive():
    order = [3, 1, 4, 0, 2]
    pos = [0] * 5
    for i, v in enumerate(order):
        pos[v] = i
    ring = Graph(5, [(order[i], order[(i + 1) % 5]) for i in range(5)])
    lab = CycleLabeling(pos)
    assert lab.validate_against(ring)
    canon = lab.canonical_graph(ring)
    assert canon == Graph.cycle(5)


def test_edge_list_roundtrip(tmp_path):
    g = Graph(7, [(0, 3), (2, 6), (1, 2)])
    path = tmp_path / "g.edges"
    write_edge_list(g, str(path))
    back = read_edge_list(str(path))
    assert back == g
    text = path.read_text().splitlines()
    assert text[0] == "7 3"


def test_labeling_roundtrip(tmp_path):
    lab = CycleLabeling([2, 0, 1, 3])
    path = tmp_path / "lab.txt"
    write_labeling(lab, str(path))
    assert read_labeling(str(path)) == lab


def test_read_edge_list_rejects_bad_header(tmp_path):
    path = tmp_path / "bad.edges"
    path.write_text("5\n0 1\n")
    with pytest.raises(ValueError):
        read_edge_list(str(path))


def test_from_edge_array_dedupes():
    arr = np.array([[0, 1], [1, 0], [2, 3]])
    g = Graph.from_edge_array(5, arr)
    assert g.edge_count == 2
