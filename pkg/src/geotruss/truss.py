"""Triangle support, fixed-c truss extraction and decremental truss upkeep.

Working subgraphs are plain ``dict[int, set[int]]`` adjacency maps; edges are
keyed ``(min(u, v), max(u, v))``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable

from .errors import VertexAbsent
from .graph import Edge, GeoSocialGraph, Query, edge_key

Adjacency = dict[int, set[int]]


@dataclass(frozen=True)
class TrussSubgraph:
    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]
    c: int


def adjacency_from_edges(edges: Iterable[Edge]) -> Adjacency:
    adj: Adjacency = {}
    for u, v in edges:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    return adj


def graph_adjacency(g: GeoSocialGraph) -> Adjacency:
    return {v: set(nb) for v, nb in enumerate(g.adj) if nb}


def compute_support(adj: Adjacency) -> dict[Edge, int]:
    """Number of triangles through every edge of ``adj``.

    Each edge is charged ``min(deg u, deg v)`` work via hashed intersection.
    """
    sup = {}
    for u, nu in adj.items():
        for v in nu:
            if u < v:
                nv = adj[v]
                sup[(u, v)] = len(nu & nv) if len(nu) <= len(nv) else len(nv & nu)
    return sup


def peel(adj: Adjacency, c: int) -> Adjacency:
    """Return a new adjacency holding the maximal c-truss of ``adj``.

    FIFO peeling: every edge with support below ``c - 2`` is removed and the
    two partner edges of each of its triangles lose one unit of support.
    Vertices left without edges are dropped.
    """
    need = c - 2
    work = {v: set(nb) for v, nb in adj.items()}
    sup = compute_support(work)
    queue = deque(e for e, s in sup.items() if s < need)
    doomed = set(queue)
    while queue:
        u, v = queue.popleft()
        nu, nv = work[u], work[v]
        for w in (nu & nv):
            for e in (edge_key(u, w), edge_key(v, w)):
                sup[e] -= 1
                if sup[e] < need and e not in doomed:
                    doomed.add(e)
                    queue.append(e)
        nu.discard(v)
        nv.discard(u)
        del sup[(u, v)]
    return {v: nb for v, nb in work.items() if nb}


def components(adj: Adjacency) -> list[list[int]]:
    """Connected components as ascending vertex lists, ordered by smallest vertex."""
    seen = set()
    out = []
    for s in sorted(adj):
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        todo = [s]
        while todo:
            x = todo.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    todo.append(y)
        comp.sort()
        out.append(comp)
    return out


def _split(adj: Adjacency, c: int) -> list[TrussSubgraph]:
    out = []
    for comp in components(adj):
        edges = tuple(sorted((u, v) for u in comp for v in adj[u] if u < v))
        out.append(TrussSubgraph(tuple(comp), edges, c))
    return out


def extract_ctruss(adj: Adjacency, c: int) -> list[TrussSubgraph]:
    """Maximal c-truss of ``adj`` split into connected components."""
    if c < 2:
        raise ValueError("c must be >= 2")
    return _split(peel(adj, c), c)


def maximal_rhoc_truss(g: GeoSocialGraph, q: Query) -> list[TrussSubgraph]:
    """Components of the maximal c-truss of ``g`` that meet the keyword constraint."""
    slot = q.slots()
    out = []
    for t in extract_ctruss(graph_adjacency(g), q.c):
        counts = [0] * len(slot)
        for v in t.vertices:
            i = slot.get(g.keywords[v])
            if i is not None:
                counts[i] += 1
        if min(counts) >= q.rho:
            out.append(t)
    return out


class TrussState:
    """A live c-truss that shrinks under vertex deletion.

    Parameters
    ----------
    edges : iterable of edge
        Edge set of a c-truss (every edge in at least ``c - 2`` triangles).
    c : int
        Target trussness.
    cascade : bool
        When False, only the deleted vertex's own edges are removed and no
        support-driven cascade runs. Exists solely for fault-injection tests.
    """

    def __init__(self, edges: Iterable[Edge], c: int, cascade: bool = True):
        self.c = c
        self.need = c - 2
        self.cascade = cascade
        self.adj = adjacency_from_edges(edges)
        self.sup = compute_support(self.adj)
        self.removed_count = 0

    def has_vertex(self, u: int) -> bool:
        return u in self.adj

    def edges(self) -> list[Edge]:
        return sorted(self.sup)

    def _drop(self, u: int, v: int) -> None:
        nu, nv = self.adj[u], self.adj[v]
        nu.discard(v)
        nv.discard(u)
        if not nu:
            del self.adj[u]
        if not nv:
            del self.adj[v]
        del self.sup[edge_key(u, v)]
        self.removed_count += 1

    def delete_vertex(self, u: int,
                      on_edge_removed: Callable[[Edge], bool | None] | None = None
                      ) -> tuple[list[Edge], bool]:
        """Delete ``u`` and cascade until the remainder is a c-truss again.

        ``on_edge_removed`` is called once per removed edge, in removal order.
        If it returns ``False`` the cascade stops immediately and the state is
        left partially updated. Returns ``(removed_edges, completed)``.
        """
        if u not in self.adj:
            raise VertexAbsent(u)
        queue = deque(edge_key(u, v) for v in sorted(self.adj[u]))
        queued = set(queue)
        removed = []
        while queue:
            e = queue.popleft()
            a, b = e
            na, nb = self.adj[a], self.adj[b]
            for w in (na & nb):
                for f in (edge_key(a, w), edge_key(b, w)):
                    self.sup[f] -= 1
                    if self.cascade and self.sup[f] < self.need and f not in queued:
                        queued.add(f)
                        queue.append(f)
            self._drop(a, b)
            removed.append(e)
            if on_edge_removed is not None and on_edge_removed(e) is False:
                return removed, False
        return removed, True

    def remove_edges(self, edges: Iterable[Edge]) -> list[Edge]:
        """Remove edges without cascading; for discarding whole components."""
        out = []
        for e in edges:
            if e not in self.sup:
                continue
            a, b = e
            for w in (self.adj[a] & self.adj[b]):
                self.sup[edge_key(a, w)] -= 1
                self.sup[edge_key(b, w)] -= 1
            self._drop(a, b)
            out.append(e)
        return out
