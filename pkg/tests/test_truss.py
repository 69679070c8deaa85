import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from geotruss.baselines import naive_ctruss, naive_support, truss_decomposition
from geotruss.errors import VertexAbsent
from geotruss.generate import random_graph
from geotruss.graph import GeoSocialGraph, Query
from geotruss.truss import (TrussState, adjacency_from_edges, compute_support, extract_ctruss,
                            graph_adjacency, maximal_rhoc_truss, peel)

from conftest import k


def clique(vs):
    return list(itertools.combinations(vs, 2))


def edge_set(trusses):
    return {e for t in trusses for e in t.edges}


def test_support_small_cliques():
    assert set(compute_support(adjacency_from_edges(clique(range(3)))).values()) == {1}
    assert set(compute_support(adjacency_from_edges(clique(range(4)))).values()) == {2}


def test_support_matches_cubic_count():
    g = random_graph(random.Random(0), 30, 0.2, 1)
    assert compute_support(graph_adjacency(g)) == naive_support(g.n, g.edges())


def test_extract_k4():
    adj = adjacency_from_edges(clique(range(4)))
    ts = extract_ctruss(adj, 4)
    assert len(ts) == 1 and len(ts[0].edges) == 6
    assert extract_ctruss(adj, 5) == []


def test_two_k4_with_bridge():
    edges = clique(range(4)) + clique(range(4, 8)) + [(3, 4)]
    ts = extract_ctruss(adjacency_from_edges(edges), 4)
    assert [t.vertices for t in ts] == [(0, 1, 2, 3), (4, 5, 6, 7)]
    assert (3, 4) not in edge_set(ts)


@pytest.mark.parametrize("c", [3, 4, 5])
@pytest.mark.parametrize("seed", range(20))
def test_extract_matches_naive(seed, c):
    rng = random.Random(seed)
    g = random_graph(rng, rng.randint(5, 30), rng.uniform(0.2, 0.6), 1)
    assert edge_set(extract_ctruss(graph_adjacency(g), c)) == naive_ctruss(g.n, g.edges(), c)


def _peel_in_order(edges, c, rng):
    es = set(edges)
    while True:
        sup = naive_support(1 + max((v for e in es for v in e), default=0), es)
        bad = [e for e, s in sup.items() if s < c - 2]
        if not bad:
            return es
        es.discard(rng.choice(bad))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.integers(3, 5))
def test_peeling_confluence(seed, c):
    g = random_graph(random.Random(seed), 14, 0.5, 1)
    a = _peel_in_order(g.edges(), c, random.Random(seed + 1))
    b = _peel_in_order(g.edges(), c, random.Random(seed + 2))
    assert a == b == edge_set(extract_ctruss(graph_adjacency(g), c))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.integers(3, 6))
def test_trusses_nest(seed, c):
    g = random_graph(random.Random(seed), 20, 0.45, 1)
    adj = graph_adjacency(g)
    assert edge_set(extract_ctruss(adj, c)) <= edge_set(extract_ctruss(adj, c - 1))


def test_decomposition_consistent_with_extraction():
    g = random_graph(random.Random(5), 25, 0.5, 1)
    tr = truss_decomposition(graph_adjacency(g))
    for c in range(2, 9):
        want = edge_set(extract_ctruss(graph_adjacency(g), c))
        assert {e for e, t in tr.items() if t >= c} == want


def test_maximal_rhoc_truss_keyword_filter():
    verts, edges = k(4, "k1")
    g = GeoSocialGraph.from_records(verts + [("z", 9, 9, "k2")], edges)
    assert maximal_rhoc_truss(g, Query((0, 0), (0, 1), 1, 4)) == []
    verts, edges = k(4, ["k1", "k1", "k2", "k2"])
    g = GeoSocialGraph.from_records(verts, edges)
    ts = maximal_rhoc_truss(g, Query((0, 0), (0, 1), 2, 4))
    assert len(ts) == 1 and len(ts[0].vertices) == 4


@pytest.mark.parametrize("seed", range(10))
def test_maximal_rhoc_truss_matches_naive_pipeline(seed):
    rng = random.Random(seed)
    g = random_graph(rng, 30, 0.35, 3)
    q = Query((5, 5), tuple(rng.sample(range(3), 2)), rng.randint(1, 2), rng.randint(3, 4))
    es = naive_ctruss(g.n, g.edges(), q.c)
    adj = adjacency_from_edges(es)
    want = []
    seen = set()
    for s in sorted(adj):
        if s in seen:
            continue
        comp, todo = {s}, [s]
        while todo:
            x = todo.pop()
            for y in adj[x] - comp:
                comp.add(y)
                todo.append(y)
        seen |= comp
        if all(sum(g.keywords[v] == kw for v in comp) >= q.rho for kw in q.keywords):
            want.append(tuple(sorted(comp)))
    assert [t.vertices for t in maximal_rhoc_truss(g, q)] == sorted(want)


def test_delete_vertex_k4_cascades_everything():
    st_ = TrussState(clique(range(4)), 4)
    seen = []
    removed, done = st_.delete_vertex(0, seen.append)
    assert done and len(removed) == 6 and seen == removed
    assert st_.edges() == []


def test_delete_vertex_is_local():
    st_ = TrussState(clique(range(4)) + clique(range(4, 8)), 4)
    calls = []
    st_.delete_vertex(1, calls.append)
    assert len(calls) == 6
    assert st_.edges() == clique(range(4, 8))


def test_delete_vertex_absent():
    st_ = TrussState(clique(range(4)), 4)
    with pytest.raises(VertexAbsent):
        st_.delete_vertex(9)


def test_callback_can_stop_the_cascade():
    st_ = TrussState(clique(range(4)), 4)
    removed, done = st_.delete_vertex(0, lambda e: False)
    assert not done and len(removed) == 1
    assert len(st_.edges()) == 5


@pytest.mark.parametrize("seed", range(25))
def test_decremental_equals_recompute(seed):
    rng = random.Random(seed)
    g = random_graph(rng, rng.randint(8, 30), rng.uniform(0.3, 0.6), 1)
    c = rng.choice((3, 4, 5))
    live = peel(graph_adjacency(g), c)
    state = TrussState([(u, v) for u in live for v in live[u] if u < v], c)
    order = list(live)
    rng.shuffle(order)
    for v in order:
        if not state.has_vertex(v):
            continue
        state.delete_vertex(v)
        live.pop(v)
        for x in live:
            live[x].discard(v)
        live = peel(live, c)
        assert state.edges() == sorted((a, b) for a in live for b in live[a] if a < b)
