"""Euler-tour trees stored in treaps keyed by tour position.

Each vertex has one *vertex node*; each tree edge ``{u, v}`` has two directed
*edge nodes* ``(u, v)`` and ``(v, u)``. A tree's tour is kept as a cyclic
sequence, so re-rooting is a rotation and ``link``/``cut`` are a constant
number of splits and merges, ``O(log n)`` expected each.

Subtree aggregates kept at every treap node:

* ``nv`` -- number of vertex nodes (tree size in vertices);
* ``agg_t`` -- number of edge nodes flagged as tree edges of this level;
* ``agg_n`` -- number of vertex nodes flagged as having non-tree edges;
* ``agg_kw`` -- keyword counts, only when the forest is built with ``dim > 0``.
"""

from __future__ import annotations

import random
from typing import Iterator


class _Node:
    __slots__ = ("left", "right", "parent", "prio", "size", "nv", "vertex", "edge",
                 "own_t", "agg_t", "own_n", "agg_n", "slot", "agg_kw")

    def __init__(self, prio, vertex=None, edge=None, slot=-1, dim=0):
        self.left = self.right = self.parent = None
        self.prio = prio
        self.vertex = vertex
        self.edge = edge
        self.size = 1
        self.nv = 1 if vertex is not None else 0
        self.own_t = self.agg_t = 0
        self.own_n = self.agg_n = 0
        self.slot = slot
        if dim:
            self.agg_kw = [0] * dim
            if slot >= 0:
                self.agg_kw[slot] = 1
        else:
            self.agg_kw = None


def _update(n: _Node) -> None:
    l, r = n.left, n.right
    size = 1
    nv = 1 if n.vertex is not None else 0
    t, nn = n.own_t, n.own_n
    kw = n.agg_kw
    if kw is not None:
        for i in range(len(kw)):
            kw[i] = 0
        if n.slot >= 0:
            kw[n.slot] = 1
    if l is not None:
        size += l.size
        nv += l.nv
        t += l.agg_t
        nn += l.agg_n
        if kw is not None:
            for i, x in enumerate(l.agg_kw):
                kw[i] += x
    if r is not None:
        size += r.size
        nv += r.nv
        t += r.agg_t
        nn += r.agg_n
        if kw is not None:
            for i, x in enumerate(r.agg_kw):
                kw[i] += x
    n.size, n.nv, n.agg_t, n.agg_n = size, nv, t, nn


def _split(t: _Node | None, k: int):
    """Split ``t`` into (first k nodes, rest); both results are parentless."""
    if t is None:
        return None, None
    ls = t.left.size if t.left is not None else 0
    if k <= ls:
        a, b = _split(t.left, k)
        t.left = b
        if b is not None:
            b.parent = t
        _update(t)
        t.parent = None
        return a, t
    a, b = _split(t.right, k - ls - 1)
    t.right = a
    if a is not None:
        a.parent = t
    _update(t)
    t.parent = None
    return t, b


def _merge(a: _Node | None, b: _Node | None) -> _Node | None:
    if a is None:
        return b
    if b is None:
        return a
    if a.prio > b.prio:
        m = _merge(a.right, b)
        a.right = m
        m.parent = a
        _update(a)
        return a
    m = _merge(a, b.left)
    b.left = m
    m.parent = b
    _update(b)
    return b


def _root(n: _Node) -> _Node:
    while n.parent is not None:
        n = n.parent
    return n


def _index(n: _Node) -> int:
    pos = n.left.size if n.left is not None else 0
    while n.parent is not None:
        p = n.parent
        if p.right is n:
            pos += (p.left.size if p.left is not None else 0) + 1
        n = p
    return pos


def _refresh_up(n: _Node) -> None:
    while n is not None:
        _update(n)
        n = n.parent


class EulerTourForest:
    """A forest of Euler-tour trees over a fixed vertex universe.

    Parameters
    ----------
    dim : int
        Width of the keyword counter aggregate; 0 disables it.
    seed : int
        Seed for treap priorities, so structure (and counters) are reproducible.
    """

    def __init__(self, dim: int = 0, seed: int = 0):
        self.dim = dim
        self._rng = random.Random(seed)
        self.vnode: dict[int, _Node] = {}
        self.enode: dict[tuple[int, int], _Node] = {}
        self.links = 0
        self.cuts = 0

    def add_vertex(self, v: int, slot: int = -1) -> None:
        if v not in self.vnode:
            self.vnode[v] = _Node(self._rng.random(), vertex=v, slot=slot, dim=self.dim)

    def __contains__(self, v: int) -> bool:
        return v in self.vnode

    def root(self, v: int) -> _Node:
        return _root(self.vnode[v])

    def connected(self, u: int, v: int) -> bool:
        return _root(self.vnode[u]) is _root(self.vnode[v])

    def tree_size(self, v: int) -> int:
        return _root(self.vnode[v]).nv

    def counts(self, v: int) -> list[int]:
        return list(_root(self.vnode[v]).agg_kw)

    def has_tree_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.enode

    def _reroot(self, v: int) -> _Node:
        n = self.vnode[v]
        r = _root(n)
        k = _index(n)
        if k == 0:
            return r
        a, b = _split(r, k)
        return _merge(b, a)

    def link(self, u: int, v: int) -> None:
        """Join the trees of ``u`` and ``v`` by the edge ``{u, v}``."""
        if (u, v) in self.enode:
            raise ValueError(f"edge {u}-{v} already linked")
        ru = self._reroot(u)
        rv = self._reroot(v)
        if ru is rv:
            raise ValueError(f"{u} and {v} already connected")
        e1 = _Node(self._rng.random(), edge=(u, v), dim=self.dim)
        e2 = _Node(self._rng.random(), edge=(v, u), dim=self.dim)
        self.enode[(u, v)] = e1
        self.enode[(v, u)] = e2
        r = _merge(_merge(_merge(ru, e1), rv), e2)
        r.parent = None
        self.links += 1

    def cut(self, u: int, v: int) -> None:
        """Remove tree edge ``{u, v}``, splitting its tree in two."""
        e1 = self.enode.pop((u, v))
        e2 = self.enode.pop((v, u))
        r = _root(e1)
        i, j = _index(e1), _index(e2)
        if i > j:
            i, j = j, i
        a, rest = _split(r, i)
        _, rest = _split(rest, 1)
        mid, rest = _split(rest, j - i - 1)
        _, c = _split(rest, 1)
        outer = _merge(a, c)
        if outer is not None:
            outer.parent = None
        if mid is not None:
            mid.parent = None
        self.cuts += 1

    def mark_tree(self, u: int, v: int, flag: bool) -> None:
        """Flag the tree edge ``{u, v}`` as belonging to exactly this level."""
        n = self.enode[(u, v) if u < v else (v, u)]
        val = 1 if flag else 0
        if n.own_t != val:
            n.own_t = val
            _refresh_up(n)

    def mark_nontree(self, v: int, flag: bool) -> None:
        n = self.vnode[v]
        val = 1 if flag else 0
        if n.own_n != val:
            n.own_n = val
            _refresh_up(n)

    @staticmethod
    def flagged_tree_edge(root: _Node) -> tuple[int, int] | None:
        if not root.agg_t:
            return None
        n = root
        while True:
            if n.left is not None and n.left.agg_t:
                n = n.left
            elif n.own_t:
                return n.edge
            else:
                n = n.right

    @staticmethod
    def flagged_vertex(root: _Node) -> int | None:
        if not root.agg_n:
            return None
        n = root
        while True:
            if n.left is not None and n.left.agg_n:
                n = n.left
            elif n.own_n:
                return n.vertex
            else:
                n = n.right

    @staticmethod
    def tree_vertices(root: _Node) -> Iterator[int]:
        stack = []
        n = root
        while stack or n is not None:
            while n is not None:
                stack.append(n)
                n = n.left
            n = stack.pop()
            if n.vertex is not None:
                yield n.vertex
            n = n.right

    def tour(self, v: int) -> list:
        """The tour sequence of ``v``'s tree, for debugging and tests."""
        out = []
        stack = []
        n = _root(self.vnode[v])
        while stack or n is not None:
            while n is not None:
                stack.append(n)
                n = n.left
            n = stack.pop()
            out.append(n.vertex if n.vertex is not None else n.edge)
            n = n.right
        return out

    def discard_vertex(self, v: int) -> None:
        self.vnode.pop(v, None)

    def discard_edge(self, u: int, v: int) -> None:
        self.enode.pop((u, v), None)
        self.enode.pop((v, u), None)
