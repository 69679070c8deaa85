import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from geotruss.errors import NonMonotoneRadius
from geotruss.generate import random_graph
from geotruss.spatial import SortedEdgeArray, build_sorted_edges, edge_keys
from geotruss.truss import TrussSubgraph, extract_ctruss, graph_adjacency


def _array(edges, sq):
    return SortedEdgeArray(edge_keys(edges, sq), sq)


def test_sorted_by_farther_endpoint():
    sq = [1.0, 9.0, 4.0, 16.0]
    a = _array([(0, 3), (0, 1), (1, 2)], sq)
    assert a.keys == [(9.0, 0, 1), (9.0, 1, 2), (16.0, 0, 3)]


def test_merge_of_two_components_is_sorted():
    sq = [float(x) for x in (5, 1, 4, 2, 3, 6)]
    t1 = TrussSubgraph((0, 1, 2), ((0, 1), (0, 2), (1, 2)), 3)
    t2 = TrussSubgraph((3, 4, 5), ((3, 4), (3, 5), (4, 5)), 3)
    a = build_sorted_edges([t1, t2], sq)
    assert a.keys == sorted(a.keys)
    assert len(a) == 6


@pytest.mark.parametrize("seed", range(10))
def test_build_matches_full_sort(seed):
    rng = random.Random(seed)
    g = random_graph(rng, 40, 0.3, 1, grid=seed % 2 == 0)
    sq = g.sq_distances((rng.uniform(0, 10), rng.uniform(0, 10)))
    H = extract_ctruss(graph_adjacency(g), 3)
    a = build_sorted_edges(H, sq)
    want = sorted((max(sq[u], sq[v]), u, v) for t in H for u, v in t.edges)
    assert a.keys == want


def test_edges_up_to_slices():
    sq = [1.0, 2.0, 3.0, 4.0]
    edges = [(0, 1), (1, 2), (2, 3), (0, 3)]
    a = _array(edges, sq)
    assert a.edges_up_to(0.0) == []
    assert a.edges_up_to(3.0) == [(0, 1), (1, 2)]
    with pytest.raises(NonMonotoneRadius):
        a.edges_up_to(2.5)
    assert a.edges_up_to(math.inf) == [(0, 3), (2, 3)]
    assert a.exhausted


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(0, 6), min_size=6, max_size=6),
       st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5)), max_size=15),
       st.lists(st.integers(0, 40), min_size=1, max_size=5))
def test_stepwise_slices_concatenate_to_filter(dists, pairs, radii):
    sq = [float(d) for d in dists]
    edges = sorted({(min(u, v), max(u, v)) for u, v in pairs if u != v})
    a = _array(edges, sq)
    got = []
    last_max = -1.0
    for r in sorted(float(x) for x in radii):
        batch = a.edges_up_to(r)
        if batch:
            # batches come out nearest-first
            assert min(max(sq[u], sq[v]) for u, v in batch) >= last_max
            last_max = max(max(sq[u], sq[v]) for u, v in batch)
        got += batch
        want = [(u, v) for d, u, v in sorted((max(sq[u], sq[v]), u, v) for u, v in edges) if d <= r]
        assert got == want


def test_radius_for_target_edges():
    sq = [1.0, 2.0, 2.0, 5.0, 7.0]
    a = _array([(0, 1), (0, 2), (1, 2), (2, 3), (3, 4)], sq)
    assert a.radius_for_target_edges(1) == 2.0
    assert a.radius_for_target_edges(len(a)) == 7.0
    assert a.radius_for_target_edges(100) == 7.0


@pytest.mark.parametrize("seed", range(10))
def test_radius_for_target_matches_scan(seed):
    rng = random.Random(seed)
    g = random_graph(rng, 30, 0.3, 1, grid=True)
    sq = g.sq_distances((3.0, 3.0))
    a = _array(g.edges(), sq)
    for target in range(1, len(a) + 1):
        d = a.radius_for_target_edges(target)
        assert sum(1 for x in a.dists if x <= d) >= target
        smaller = [x for x in a.dists if x < d]
        assert len(smaller) < target


def test_all_equal_distances_take_everything_at_once():
    sq = [4.0] * 5
    a = _array([(0, 1), (1, 2), (2, 3), (3, 4)], sq)
    d = a.radius_for_target_edges(1)
    assert len(a.edges_up_to(d)) == 4 and a.exhausted


def test_fresh_cursor_is_independent():
    sq = [1.0, 2.0, 3.0]
    a = _array([(0, 1), (1, 2)], sq)
    a.edges_up_to(9.0)
    b = a.fresh()
    assert b.cursor == 0 and b.edges_up_to(2.0) == [(0, 1)]
