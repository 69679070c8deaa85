import random

import pytest
from hypothesis import given, settings, strategies as st

from geotruss.ett import EulerTourForest


def _forest(n, dim=0, slots=None):
    f = EulerTourForest(dim, seed=1)
    for v in range(n):
        f.add_vertex(v, -1 if slots is None else slots[v])
    return f


def test_link_cut_path():
    f = _forest(4)
    f.link(0, 1)
    f.link(1, 2)
    assert f.connected(0, 2) and not f.connected(0, 3)
    assert f.tree_size(2) == 3
    f.cut(0, 1)
    assert not f.connected(0, 2) and f.tree_size(1) == 2


def test_tour_is_an_euler_tour():
    f = _forest(5)
    for u, v in [(0, 1), (1, 2), (1, 3), (3, 4)]:
        f.link(u, v)
    tour = f.tour(0)
    vertices = [x for x in tour if isinstance(x, int)]
    arcs = [x for x in tour if isinstance(x, tuple)]
    assert sorted(vertices) == list(range(5))
    assert len(arcs) == 8 and set(arcs) == {(u, v) for u, v in f.enode}


def test_link_rejects_cycles():
    f = _forest(3)
    f.link(0, 1)
    f.link(1, 2)
    with pytest.raises(ValueError):
        f.link(0, 2)


def test_keyword_aggregate():
    f = _forest(4, dim=2, slots=[0, 1, 1, -1])
    f.link(0, 1)
    f.link(1, 2)
    assert f.counts(0) == [1, 2]
    f.cut(1, 2)
    assert f.counts(0) == [1, 1] and f.counts(2) == [0, 1]
    assert f.counts(3) == [0, 0]


def test_flag_search():
    f = _forest(4)
    f.link(0, 1)
    f.link(2, 3)
    f.link(1, 2)
    assert EulerTourForest.flagged_tree_edge(f.root(0)) is None
    f.mark_tree(2, 1, True)
    assert EulerTourForest.flagged_tree_edge(f.root(3)) == (1, 2)
    f.mark_nontree(3, True)
    assert EulerTourForest.flagged_vertex(f.root(0)) == 3
    f.cut(1, 2)
    assert EulerTourForest.flagged_vertex(f.root(0)) is None
    assert EulerTourForest.flagged_vertex(f.root(2)) == 3


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_random_link_cut_against_union_find(seed):
    rng = random.Random(seed)
    n = 25
    f = _forest(n, dim=1, slots=[rng.choice((-1, 0)) for _ in range(n)])
    slots = [f.vnode[v].slot for v in range(n)]
    edges = set()
    for _ in range(150):
        if edges and rng.random() < 0.4:
            u, v = rng.choice(sorted(edges))
            f.cut(u, v)
            edges.discard((u, v))
        else:
            u, v = rng.randrange(n), rng.randrange(n)
            if u == v or f.connected(u, v):
                continue
            f.link(u, v)
            edges.add((u, v))
        adj = {x: set() for x in range(n)}
        for a, b in edges:
            adj[a].add(b)
            adj[b].add(a)
        seen = {}
        for s in range(n):
            if s in seen:
                continue
            comp, todo = {s}, [s]
            while todo:
                x = todo.pop()
                for y in adj[x] - comp:
                    comp.add(y)
                    todo.append(y)
            for x in comp:
                seen[x] = comp
        for x in range(n):
            comp = seen[x]
            assert f.tree_size(x) == len(comp)
            assert f.counts(x) == [sum(slots[y] == 0 for y in comp)]
            assert sorted(EulerTourForest.tree_vertices(f.root(x))) == sorted(comp)
