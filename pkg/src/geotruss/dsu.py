"""Union-find whose sets carry per-keyword vertex counts."""

from __future__ import annotations

from typing import Mapping, Sequence

from .errors import DoubleInsert, NotInserted
from .graph import GeoSocialGraph, Query
from .spatial import SortedEdgeArray


class KeywordDSU:
    """Grow-only disjoint sets over vertices with keyword frequency counters.

    A set is *satisfied* when each query keyword occurs on at least ``rho``
    of its members. Vertices whose keyword is not queried still join sets but
    add nothing to the counters.

    Parameters
    ----------
    slots : mapping
        Keyword id -> counter position, typically ``Query.slots()``.
    rho : int
        Minimum members per query keyword.
    """

    def __init__(self, slots: Mapping[int, int], rho: int):
        self.slots = slots
        self.width = len(slots)
        self.rho = rho
        self.parent: dict[int, int] = {}
        self.rank: dict[int, int] = {}
        self.counts: dict[int, list[int]] = {}
        self.members: dict[int, list[int]] = {}
        self.satisfied_roots: set[int] = set()
        self.unions = 0

    def __contains__(self, v: int) -> bool:
        return v in self.parent

    def __len__(self):
        return len(self.parent)

    def insert_vertex(self, v: int, kw: int) -> None:
        if v in self.parent:
            raise DoubleInsert(v)
        self.parent[v] = v
        self.rank[v] = 0
        cnt = [0] * self.width
        i = self.slots.get(kw)
        if i is not None:
            cnt[i] = 1
        self.counts[v] = cnt
        self.members[v] = [v]
        if min(cnt) >= self.rho:
            self.satisfied_roots.add(v)

    def find(self, v: int) -> int:
        parent = self.parent
        if v not in parent:
            raise NotInserted(v)
        root = v
        while parent[root] != root:
            root = parent[root]
        while parent[v] != root:
            parent[v], v = root, parent[v]
        return root

    def union_edge(self, u: int, v: int) -> int | None:
        """Merge the sets of ``u`` and ``v``.

        Returns the merged root when the merge creates a satisfied set out of
        two unsatisfied ones, otherwise None.
        """
        ru, rv = self.find(u), self.find(v)
        if ru == rv:
            return None
        if self.rank[ru] > self.rank[rv]:
            ru, rv = rv, ru
        # rv becomes the root
        self.parent[ru] = rv
        if self.rank[ru] == self.rank[rv]:
            self.rank[rv] += 1
        del self.rank[ru]
        cu = self.counts.pop(ru)
        cv = self.counts[rv]
        ok = True
        for i in range(self.width):
            cv[i] += cu[i]
            if cv[i] < self.rho:
                ok = False
        mu = self.members.pop(ru)
        mv = self.members[rv]
        if len(mu) > len(mv):
            mu, mv = mv, mu
            self.members[rv] = mv
        mv.extend(mu)
        self.unions += 1
        was = ru in self.satisfied_roots or rv in self.satisfied_roots
        self.satisfied_roots.discard(ru)
        if ok:
            self.satisfied_roots.add(rv)
            return None if was else rv
        return None

    def set_counts(self, v: int) -> list[int]:
        return list(self.counts[self.find(v)])

    def satisfied_sets(self) -> list[tuple[int, list[int]]]:
        return [(r, sorted(self.members[r])) for r in sorted(self.satisfied_roots)]

    def sets(self) -> list[tuple[int, list[int]]]:
        return [(r, sorted(ms)) for r, ms in sorted(self.members.items())]


def find_lower_bound_radius(a: SortedEdgeArray, g: GeoSocialGraph, q: Query,
                            slots: Mapping[int, int] | None = None):
    """Smallest radius whose edge-prefix has a keyword-satisfying component.

    Scans ``a`` from its first edge, independent of its cursor. Returns
    ``(radius_sq, members, adjacency, edges_scanned)`` or None when the whole
    array never satisfies the keyword constraint.
    """
    slots = q.slots() if slots is None else slots
    dsu = KeywordDSU(slots, q.rho)
    kw: Sequence[int] = g.keywords
    adj: dict[int, set[int]] = {}
    for i, (d, u, v) in enumerate(a.keys):
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
        for x in (u, v):
            if x not in dsu:
                dsu.insert_vertex(x, kw[x])
                if x in dsu.satisfied_roots:
                    return d, [x], adj, i + 1
        root = dsu.union_edge(u, v)
        if root is not None:
            return d, sorted(dsu.members[root]), adj, i + 1
    return None
