"""Attributed graph, query and result types.

Vertices are dense integers ``0..n-1``. Each vertex has a planar position and
exactly one keyword, interned to a small integer. Distances are plain
Euclidean; all orderings compare squared distances so that no square root is
taken inside the search loops.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import EmptyGroup, InvalidParameter, UnknownKeyword

Edge = tuple[int, int]
Point = tuple[float, float]


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class GeoSocialGraph:
    """Immutable undirected graph with per-vertex coordinates and keyword.

    Parameters
    ----------
    adjacency : sequence of iterables
        ``adjacency[v]`` lists the neighbours of ``v``. Must be symmetric and
        free of self-loops; duplicates are not allowed.
    xs, ys : sequence of float
        Vertex coordinates.
    keywords : sequence of int
        Interned keyword id of every vertex.
    labels : sequence of str, optional
        External vertex ids (defaults to ``str(v)``).
    keyword_names : sequence of str, optional
        ``keyword_names[k]`` is the string for keyword id ``k``.
    """

    __slots__ = ("n", "adj", "xs", "ys", "keywords", "labels",
                 "keyword_names", "keyword_index", "m", "_label_index")

    def __init__(self, adjacency, xs, ys, keywords, labels=None, keyword_names=None):
        self.n = len(adjacency)
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(nb)) for nb in adjacency)
        self.xs = np.asarray(xs, dtype=float)
        self.ys = np.asarray(ys, dtype=float)
        self.keywords: tuple[int, ...] = tuple(int(k) for k in keywords)
        if not (len(self.xs) == len(self.ys) == len(self.keywords) == self.n):
            raise ValueError("attribute arrays must have one entry per vertex")
        if labels is None:
            labels = [str(v) for v in range(self.n)]
        self.labels: tuple[str, ...] = tuple(labels)
        if keyword_names is None:
            top = max(self.keywords, default=-1)
            keyword_names = [f"k{k}" for k in range(top + 1)]
        self.keyword_names: tuple[str, ...] = tuple(keyword_names)
        self.keyword_index = {name: k for k, name in enumerate(self.keyword_names)}
        self._label_index = None
        m = 0
        for u, nb in enumerate(self.adj):
            for i, v in enumerate(nb):
                if v == u:
                    raise ValueError(f"self-loop on vertex {u}")
                if i and nb[i - 1] == v:
                    raise ValueError(f"parallel edge {u}-{v}")
                if not 0 <= v < self.n:
                    raise ValueError(f"neighbour {v} of {u} out of range")
            m += len(nb)
        for u, nb in enumerate(self.adj):
            for v in nb:
                if not _contains(self.adj[v], u):
                    raise ValueError(f"adjacency not symmetric at {u}-{v}")
        self.m = m // 2

    @classmethod
    def from_edges(cls, n, edges, xs, ys, keywords, labels=None, keyword_names=None):
        """Build from an edge list; duplicates collapse, self-loops are dropped."""
        nb = [set() for _ in range(n)]
        for u, v in edges:
            if u != v:
                nb[u].add(v)
                nb[v].add(u)
        return cls(nb, xs, ys, keywords, labels, keyword_names)

    @classmethod
    def from_records(cls, vertices, edges):
        """Build from ``(label, x, y, keyword)`` rows and ``(label, label)`` pairs.

        Convenience constructor for small hand-written graphs. Labels are
        remapped to dense ids in lexicographic order; keywords are interned
        in sorted order.
        """
        rows = sorted(vertices, key=lambda r: r[0])
        labels = [r[0] for r in rows]
        index = {lab: i for i, lab in enumerate(labels)}
        names = sorted({r[3] for r in rows})
        kw_index = {k: i for i, k in enumerate(names)}
        return cls.from_edges(
            len(rows),
            [(index[a], index[b]) for a, b in edges],
            [float(r[1]) for r in rows],
            [float(r[2]) for r in rows],
            [kw_index[r[3]] for r in rows],
            labels,
            names,
        )

    def edges(self) -> list[Edge]:
        return [(u, v) for u, nb in enumerate(self.adj) for v in nb if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        return _contains(self.adj[u], v)

    def vertex(self, label: str) -> int:
        if self._label_index is None:
            self._label_index = {lab: i for i, lab in enumerate(self.labels)}
        return self._label_index[label]

    def sq_distances(self, location: Point) -> list[float]:
        """Squared Euclidean distance of every vertex to ``location``."""
        dx = self.xs - float(location[0])
        dy = self.ys - float(location[1])
        return (dx * dx + dy * dy).tolist()

    def __repr__(self):
        return f"GeoSocialGraph(n={self.n}, m={self.m}, keywords={len(self.keyword_names)})"


def _contains(sorted_nb: Sequence[int], x: int) -> bool:
    lo, hi = 0, len(sorted_nb)
    while lo < hi:
        mid = (lo + hi) // 2
        if sorted_nb[mid] < x:
            lo = mid + 1
        else:
            hi = mid
    return lo < len(sorted_nb) and sorted_nb[lo] == x


@dataclass(frozen=True)
class Query:
    """A group query.

    ``keywords`` holds interned keyword ids, sorted and distinct. ``delta`` is
    the edge-count growth ratio used between consecutive search radii.
    """

    location: Point
    keywords: tuple[int, ...]
    rho: int
    c: int
    delta: Fraction = Fraction(2)

    def __post_init__(self):
        kws = tuple(sorted(set(int(k) for k in self.keywords)))
        object.__setattr__(self, "keywords", kws)
        object.__setattr__(self, "location", (float(self.location[0]), float(self.location[1])))
        if not kws:
            raise InvalidParameter("keywords", kws, "at least one keyword is required")
        if int(self.rho) != self.rho or self.rho < 1:
            raise InvalidParameter("rho", self.rho, "must be an integer >= 1")
        if int(self.c) != self.c or self.c < 2:
            raise InvalidParameter("c", self.c, "must be an integer >= 2")
        try:
            delta = Fraction(str(self.delta)) if isinstance(self.delta, float) else Fraction(self.delta)
        except (TypeError, ValueError):
            raise InvalidParameter("delta", self.delta) from None
        if delta <= 1:
            raise InvalidParameter("delta", self.delta, "must be > 1")
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "rho", int(self.rho))
        object.__setattr__(self, "c", int(self.c))

    def slots(self) -> dict[int, int]:
        """Map keyword id -> position in ``keywords``."""
        return {k: i for i, k in enumerate(self.keywords)}

    def check_against(self, g: GeoSocialGraph) -> None:
        for k in self.keywords:
            if not 0 <= k < len(g.keyword_names):
                raise UnknownKeyword(k)


@dataclass
class GroupResult:
    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]
    dist: float
    stats: dict = field(default_factory=dict)

    @classmethod
    def build(cls, g: GeoSocialGraph, location: Point, vertices: Iterable[int],
              edges: Iterable[Edge], stats: Mapping | None = None) -> "GroupResult":
        vs = tuple(sorted(set(vertices)))
        es = tuple(sorted(edge_key(u, v) for u, v in edges))
        return cls(vs, es, group_distance(location, vs, g), dict(stats or {}))


def distance(location: Point, v: int, g: GeoSocialGraph) -> float:
    dx = float(g.xs[v]) - location[0]
    dy = float(g.ys[v]) - location[1]
    return math.sqrt(dx * dx + dy * dy)


def group_distance(location: Point, s: Iterable[int], g: GeoSocialGraph) -> float:
    best = None
    for v in s:
        d = distance(location, v, g)
        if best is None or d > best:
            best = d
    if best is None:
        raise EmptyGroup("group distance of an empty vertex set")
    return best


def keyword_counts(vertices: Iterable[int], q: Query, g: GeoSocialGraph) -> list[int]:
    slot = q.slots()
    counts = [0] * len(q.keywords)
    for v in vertices:
        i = slot.get(g.keywords[v])
        if i is not None:
            counts[i] += 1
    return counts


def validate_group(s: GroupResult, q: Query, g: GeoSocialGraph) -> bool:
    """Re-check a result from scratch.

    The group is the subgraph formed by ``s.edges``; its vertex set must be
    exactly the endpoints of those edges. It is valid when it is connected,
    every edge lies in at least ``c - 2`` triangles of the group, and every
    query keyword is carried by at least ``rho`` members.
    """
    if not s.vertices or not s.edges:
        return False
    vs = set(s.vertices)
    nb: dict[int, set[int]] = {v: set() for v in vs}
    for u, v in s.edges:
        if u == v or u not in vs or v not in vs or not g.has_edge(u, v):
            return False
        nb[u].add(v)
        nb[v].add(u)
    if any(not x for x in nb.values()):
        return False
    need = q.c - 2
    for u, v in s.edges:
        if len(nb[u] & nb[v]) < need:
            return False
    start = s.vertices[0]
    seen = {start}
    todo = deque([start])
    while todo:
        x = todo.popleft()
        for y in nb[x]:
            if y not in seen:
                seen.add(y)
                todo.append(y)
    if len(seen) != len(vs):
        return False
    return min(keyword_counts(vs, q, g)) >= q.rho
