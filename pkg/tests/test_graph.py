import math
import random

import pytest
from hypothesis import given, strategies as st

from geotruss.errors import EmptyGroup, InvalidParameter, UnknownKeyword
from geotruss.graph import (GeoSocialGraph, GroupResult, Query, distance, group_distance,
                            validate_group)

from conftest import k


def _points(pts, kw=None):
    n = len(pts)
    return GeoSocialGraph.from_edges(n, [], [p[0] for p in pts], [p[1] for p in pts],
                                     kw or [0] * n, keyword_names=["k1"])


def test_distance_examples():
    g = _points([(3, 4), (1, 1)])
    assert distance((0, 0), 0, g) == 5.0
    assert distance((1, 1), 1, g) == 0.0
    d = distance((0, 0), 1, g)
    assert d == pytest.approx(1.4142135623730951, abs=0)
    assert d * d == pytest.approx(2.0)


def test_group_distance_examples():
    g = _points([(3, 4), (0, 1), (0, 2)])
    assert group_distance((0, 0), [0], g) == 5.0
    assert group_distance((0, 0), [1, 2], g) == 2.0
    with pytest.raises(EmptyGroup):
        group_distance((0, 0), [], g)


def test_group_distance_matches_loop():
    rng = random.Random(7)
    pts = [(rng.uniform(-5, 5), rng.uniform(-5, 5)) for _ in range(10)]
    g = _points(pts)
    want = max(math.hypot(x - 1, y + 2) for x, y in pts)
    assert group_distance((1, -2), range(10), g) == pytest.approx(want, rel=1e-15)


@given(st.lists(st.tuples(st.floats(-1e3, 1e3), st.floats(-1e3, 1e3)), min_size=1, max_size=12),
       st.tuples(st.floats(-1e3, 1e3), st.floats(-1e3, 1e3)))
def test_group_distance_dominates_members(pts, loc):
    g = _points(pts)
    d = group_distance(loc, range(len(pts)), g)
    assert all(d >= distance(loc, v, g) for v in range(len(pts)))
    assert all(distance(loc, v, g) >= 0 for v in range(len(pts)))


def test_adjacency_is_sorted_and_symmetric():
    rng = random.Random(1)
    edges = [(rng.randrange(20), rng.randrange(20)) for _ in range(80)]
    g = GeoSocialGraph.from_edges(20, edges, [0.0] * 20, [0.0] * 20, [0] * 20)
    for u in range(g.n):
        assert list(g.adj[u]) == sorted(set(g.adj[u]))
        assert u not in g.adj[u]
        for v in g.adj[u]:
            assert u in g.adj[v]


def test_constructor_rejects_asymmetric_adjacency():
    with pytest.raises(ValueError):
        GeoSocialGraph([[1], []], [0, 0], [0, 0], [0, 0])


def test_query_validation():
    with pytest.raises(InvalidParameter):
        Query((0, 0), (0,), 0, 3)
    with pytest.raises(InvalidParameter):
        Query((0, 0), (0,), 1, 1)
    with pytest.raises(InvalidParameter):
        Query((0, 0), (0,), 1, 3, delta=1)
    with pytest.raises(InvalidParameter):
        Query((0, 0), (), 1, 3)
    q = Query((0, 0), (2, 0, 2), 1, 3, delta="3/2")
    assert q.keywords == (0, 2)
    assert q.delta == pytest.approx(1.5)


def test_unknown_keyword_id():
    verts, edges = k(3)
    g = GeoSocialGraph.from_records(verts, edges)
    with pytest.raises(UnknownKeyword):
        Query((0, 0), (5,), 1, 3).check_against(g)


def _result(g, vs, loc=(0, 0)):
    vs = sorted(vs)
    es = [(u, v) for u in vs for v in vs if u < v and g.has_edge(u, v)]
    return GroupResult.build(g, loc, vs, es)


def test_validate_group_k4():
    verts, edges = k(4)
    g = GeoSocialGraph.from_records(verts, edges)
    q = Query((0, 0), (0,), 2, 4)
    assert validate_group(_result(g, range(4)), q, g)
    assert not validate_group(_result(g, range(3)), q, g)


def _naive_valid(g, vs, q):
    vs = set(vs)
    es = {(u, v) for u in vs for v in vs if u < v and g.has_edge(u, v)}
    if not es or {x for e in es for x in e} != vs:
        return False
    for u, v in es:
        tri = sum(1 for w in vs if w not in (u, v) and g.has_edge(u, w) and g.has_edge(v, w))
        if tri < q.c - 2:
            return False
    comp = {min(vs)}
    changed = True
    while changed:
        changed = False
        for u, v in es:
            if (u in comp) != (v in comp):
                comp |= {u, v}
                changed = True
    if comp != vs:
        return False
    return all(sum(1 for v in vs if g.keywords[v] == kw) >= q.rho for kw in q.keywords)


@pytest.mark.parametrize("seed", range(100))
def test_validate_group_matches_naive_checker(seed):
    rng = random.Random(seed)
    n = 20
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.45]
    g = GeoSocialGraph.from_edges(n, edges, [rng.random() for _ in range(n)],
                                  [rng.random() for _ in range(n)],
                                  [rng.randrange(3) for _ in range(n)], keyword_names=["a", "b", "c"])
    q = Query((0.5, 0.5), tuple(rng.sample(range(3), rng.randint(1, 3))),
              rng.randint(1, 2), rng.randint(3, 4))
    vs = rng.sample(range(n), rng.randint(3, 12))
    r = _result(g, vs)
    if not r.edges:
        assert not validate_group(r, q, g)
        return
    assert validate_group(r, q, g) == _naive_valid(g, vs, q)


def test_from_records_remaps_lexicographically():
    g = GeoSocialGraph.from_records([("z", 0, 0, "b"), ("a", 1, 1, "a")], [("z", "a")])
    assert g.labels == ("a", "z")
    assert g.keyword_names == ("a", "b")
    assert g.keywords == (0, 1)
    assert g.m == 1
