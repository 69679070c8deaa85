"""Edges of the candidate trusses ordered by distance to the query location.

An edge's distance is the larger of its endpoints' distances. Internally all
radii are squared distances; callers convert with ``math.sqrt`` only when a
value is reported.
"""

from __future__ import annotations

import heapq
from typing import Iterable, Sequence

from .errors import NonMonotoneRadius
from .graph import Edge
from .truss import TrussSubgraph


class SortedEdgeArray:
    """Edges sorted by ``(edge_sq_dist, min id, max id)`` with a forward cursor.

    Parameters
    ----------
    keys : sequence of (float, int, int)
        Already sorted ``(sq_dist, u, v)`` triples with ``u < v``.
    sq_dist : sequence of float
        Per-vertex squared distances used to build the keys.
    """

    def __init__(self, keys: Sequence[tuple[float, int, int]], sq_dist: Sequence[float]):
        self.keys = list(keys)
        self.dists = [k[0] for k in self.keys]
        self.vertex_sq_dist = sq_dist
        self.cursor = 0
        self._last = float("-inf")

    def __len__(self):
        return len(self.keys)

    def fresh(self) -> "SortedEdgeArray":
        """A second cursor over the same arrays, positioned at the start."""
        a = SortedEdgeArray.__new__(SortedEdgeArray)
        a.keys, a.dists, a.vertex_sq_dist = self.keys, self.dists, self.vertex_sq_dist
        a.cursor = 0
        a._last = float("-inf")
        return a

    def edges_up_to(self, radius_sq: float) -> list[Edge]:
        """Yield-once slice of edges with distance ``<= radius_sq``."""
        if radius_sq < self._last:
            raise NonMonotoneRadius(f"radius regressed from {self._last} to {radius_sq}")
        self._last = radius_sq
        i = self.cursor
        keys, dists = self.keys, self.dists
        end = len(keys)
        out = []
        while i < end and dists[i] <= radius_sq:
            _, u, v = keys[i]
            out.append((u, v))
            i += 1
        self.cursor = i
        return out

    def count_up_to(self, radius_sq: float) -> int:
        lo, hi = 0, len(self.dists)
        while lo < hi:
            mid = (lo + hi) // 2
            if self.dists[mid] <= radius_sq:
                lo = mid + 1
            else:
                hi = mid
        return lo

    def count_below(self, radius_sq: float) -> int:
        lo, hi = 0, len(self.dists)
        while lo < hi:
            mid = (lo + hi) // 2
            if self.dists[mid] < radius_sq:
                lo = mid + 1
            else:
                hi = mid
        return lo

    def radius_for_target_edges(self, target: int) -> float:
        """Smallest realised radius covering at least ``target`` edges.

        Falls back to the largest radius when ``target`` exceeds the array.
        """
        if target < 1:
            raise ValueError("target must be >= 1")
        if not self.dists:
            raise ValueError("empty edge array")
        return self.dists[min(target, len(self.dists)) - 1]

    @property
    def exhausted(self) -> bool:
        return self.cursor >= len(self.keys)


def edge_keys(edges: Iterable[Edge], sq_dist: Sequence[float]) -> list[tuple[float, int, int]]:
    out = []
    for u, v in edges:
        if u > v:
            u, v = v, u
        du, dv = sq_dist[u], sq_dist[v]
        out.append((du if du > dv else dv, u, v))
    out.sort()
    return out


def build_sorted_edges(trusses: Iterable[TrussSubgraph], sq_dist: Sequence[float]) -> SortedEdgeArray:
    """Sort every truss separately, then k-way merge into one array."""
    runs = [edge_keys(t.edges, sq_dist) for t in trusses]
    return SortedEdgeArray(list(heapq.merge(*runs)), sq_dist)
