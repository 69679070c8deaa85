"""Decremental connectivity with per-component keyword counts.

Edges carry a level starting at 0. ``forests[i]`` spans the subgraph of edges
with level >= i. When a tree edge of level ``l`` is deleted, for each level
from ``l`` down to 0 the smaller of the two halves has its level-``i`` tree
edges promoted, then its level-``i`` non-tree edges are scanned: an edge that
stays inside the half is promoted, an edge that leaves it reconnects the two
halves and the scan stops. A tree at level ``i`` never exceeds
``n / 2**i`` vertices, so levels stay below ``log2 n``.

The level-0 forest additionally aggregates keyword counts, so the counts of
every component are read at its tour root. Components that fail the keyword
constraint (or are single vertices) can be pruned as soon as they split off.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Mapping

from .errors import EdgeAbsent
from .ett import EulerTourForest
from .graph import Edge, edge_key


class KeywordSpanningForest:
    """Spanning forest over a shrinking graph, tracking keyword-satisfying trees.

    Parameters
    ----------
    slot_of : mapping
        Vertex -> keyword counter position (missing or -1 for non-query keywords).
    width : int
        Number of query keywords.
    rho : int
        Minimum count per keyword for a tree to be satisfying.
    prune : bool
        Drop non-satisfying trees as soon as they appear.
    """

    def __init__(self, slot_of: Mapping[int, int], width: int, rho: int, prune: bool = True):
        self.slot_of = slot_of
        self.width = width
        self.rho = rho
        self.prune = prune
        self.forests: list[EulerTourForest] = []
        self.level: dict[Edge, int] = {}
        self.tree: set[Edge] = set()
        self.nontree: list[dict[int, set[int]]] = []
        self.adj: dict[int, set[int]] = {}
        self.alive: set[int] = set()
        self.pruned: set[int] = set()
        self.n_initial = 0
        self.n_satisfied = 0
        self.max_level = 0
        self.promotions = 0
        self.replacements = 0
        self.splits = 0
        self.last_pruned: list[int] = []

    # -- construction ------------------------------------------------------

    @classmethod
    def build(cls, vertices: Iterable[int], edges: Iterable[Edge], slot_of: Mapping[int, int],
              width: int, rho: int, prune: bool = True,
              tree_edges: Iterable[Edge] | None = None) -> "KeywordSpanningForest":
        """Spanning forest of the given graph, all edges at level 0.

        Uses a BFS tree per component (roots and neighbour order ascending)
        unless ``tree_edges`` supplies the spanning forest explicitly.
        """
        f = cls(slot_of, width, rho, prune)
        verts = sorted(set(vertices))
        f.alive = set(verts)
        f.n_initial = len(verts)
        f._level_forest(0)
        for v in verts:
            f.adj[v] = set()
            f.forests[0].add_vertex(v, slot_of.get(v, -1))
        for u, v in edges:
            e = edge_key(u, v)
            f.adj[e[0]].add(e[1])
            f.adj[e[1]].add(e[0])
            f.level[e] = 0
        if tree_edges is None:
            chosen = []
            seen = set()
            for s in verts:
                if s in seen:
                    continue
                seen.add(s)
                todo = deque([s])
                while todo:
                    x = todo.popleft()
                    for y in sorted(f.adj[x]):
                        if y not in seen:
                            seen.add(y)
                            chosen.append((x, y))
                            todo.append(y)
        else:
            chosen = list(tree_edges)
        for u, v in chosen:
            e = edge_key(u, v)
            if e not in f.level:
                raise ValueError(f"tree edge {e} is not a graph edge")
            f.forests[0].link(u, v)
            f.tree.add(e)
            f.forests[0].mark_tree(u, v, True)
        for e in f.level:
            if e not in f.tree:
                f._add_nontree(e, 0)
        for r in list(f._roots()):
            if f._ok(r):
                f.n_satisfied += 1
            elif prune:
                f._prune_tree(r)
        return f

    def _level_forest(self, i: int) -> EulerTourForest:
        while len(self.forests) <= i:
            k = len(self.forests)
            self.forests.append(EulerTourForest(self.width if k == 0 else 0, seed=k))
            self.nontree.append({})
        return self.forests[i]

    def _vertex_at(self, i: int, v: int) -> EulerTourForest:
        f = self._level_forest(i)
        if v not in f:
            f.add_vertex(v)
        return f

    def _add_nontree(self, e: Edge, i: int) -> None:
        u, v = e
        self._level_forest(i)
        nt = self.nontree[i]
        for a, b in ((u, v), (v, u)):
            s = nt.get(a)
            if s is None:
                s = nt[a] = set()
            s.add(b)
            if len(s) == 1:
                self._vertex_at(i, a).mark_nontree(a, True)
        self.level[e] = i
        if i > self.max_level:
            self.max_level = i

    def _remove_nontree(self, e: Edge, i: int) -> None:
        u, v = e
        nt = self.nontree[i]
        for a, b in ((u, v), (v, u)):
            s = nt[a]
            s.discard(b)
            if not s:
                del nt[a]
                self.forests[i].mark_nontree(a, False)

    # -- queries -----------------------------------------------------------

    def _roots(self):
        f0 = self.forests[0]
        seen = set()
        for v in sorted(self.alive):
            r = f0.root(v)
            if id(r) not in seen:
                seen.add(id(r))
                yield r

    def _ok(self, root) -> bool:
        return root.nv >= 2 and all(x >= self.rho for x in root.agg_kw)

    def has_edge(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self.level

    def has_satisfying(self) -> bool:
        return self.n_satisfied > 0

    def components(self) -> list[tuple[list[int], list[int]]]:
        """Alive trees as ``(sorted vertices, keyword counts)``, sorted."""
        out = []
        for r in self._roots():
            out.append((sorted(EulerTourForest.tree_vertices(r)), list(r.agg_kw)))
        out.sort()
        return out

    def satisfying_components(self) -> list[tuple[list[int], list[int]]]:
        return [c for c in self.components() if len(c[0]) >= 2 and min(c[1]) >= self.rho]

    @property
    def links(self) -> int:
        return sum(f.links for f in self.forests)

    @property
    def cuts(self) -> int:
        return sum(f.cuts for f in self.forests)

    # -- deletion ----------------------------------------------------------

    def ck_checking(self, e: Edge) -> bool:
        """Delete edge ``e``; True iff some satisfying tree remains anywhere."""
        u, v = e = edge_key(*e)
        lvl = self.level.get(e)
        if lvl is None:
            raise EdgeAbsent(e)
        self.last_pruned = []
        del self.level[e]
        self.adj[u].discard(v)
        self.adj[v].discard(u)
        if e not in self.tree:
            self._remove_nontree(e, lvl)
            return self.n_satisfied > 0
        self.tree.discard(e)
        self.forests[lvl].mark_tree(u, v, False)
        f0 = self.forests[0]
        was_ok = self._ok(f0.root(u))
        for i in range(lvl + 1):
            self.forests[i].cut(u, v)
        if self._replace(u, v, lvl):
            return self.n_satisfied > 0
        self.splits += 1
        ru, rv = f0.root(u), f0.root(v)
        now = [r for r in (ru, rv) if self._ok(r)]
        self.n_satisfied += len(now) - (1 if was_ok else 0)
        if self.prune:
            for r in (ru, rv):
                if not self._ok(r):
                    self._prune_tree(r)
        return self.n_satisfied > 0

    def _replace(self, u: int, v: int, lvl: int) -> bool:
        for i in range(lvl, -1, -1):
            f = self.forests[i]
            ru, rv = f.root(u), f.root(v)
            small = ru if ru.nv <= rv.nv else rv
            up = self._level_forest(i + 1)
            while True:
                te = EulerTourForest.flagged_tree_edge(small)
                if te is None:
                    break
                a, b = te
                f.mark_tree(a, b, False)
                self._vertex_at(i + 1, a)
                self._vertex_at(i + 1, b)
                up.link(a, b)
                up.mark_tree(a, b, True)
                self.level[(a, b)] = i + 1
                self.promotions += 1
                if i + 1 > self.max_level:
                    self.max_level = i + 1
            nt = self.nontree[i]
            while True:
                x = EulerTourForest.flagged_vertex(small)
                if x is None:
                    break
                for w in sorted(nt.get(x, ())):
                    e = edge_key(x, w)
                    if w in f and f.root(w) is small:
                        self._remove_nontree(e, i)
                        self._add_nontree(e, i + 1)
                        self.promotions += 1
                        continue
                    self._remove_nontree(e, i)
                    self.tree.add(e)
                    for j in range(i + 1):
                        self._vertex_at(j, x)
                        self._vertex_at(j, w)
                        self.forests[j].link(x, w)
                    self.forests[i].mark_tree(x, w, True)
                    self.level[e] = i
                    self.replacements += 1
                    return True
        return False

    def _prune_tree(self, root) -> None:
        verts = list(EulerTourForest.tree_vertices(root))
        for x in verts:
            for y in list(self.adj[x]):
                e = edge_key(x, y)
                lvl = self.level.pop(e)
                self.adj[y].discard(x)
                if e in self.tree:
                    self.tree.discard(e)
                    for j in range(lvl + 1):
                        self.forests[j].discard_edge(x, y)
                else:
                    self._remove_nontree(e, lvl)
            self.adj[x].clear()
        for x in verts:
            del self.adj[x]
            self.alive.discard(x)
            self.pruned.add(x)
            for f in self.forests:
                f.discard_vertex(x)
        self.last_pruned.extend(verts)

    # -- checks ------------------------------------------------------------

    def check_invariants(self) -> None:
        """Assert the level invariants; intended for tests on small inputs."""
        n0 = self.n_initial
        for i, f in enumerate(self.forests):
            edges_ge = [e for e, l in self.level.items() if l >= i]
            adj: dict[int, set[int]] = {}
            for a, b in edges_ge:
                adj.setdefault(a, set()).add(b)
                adj.setdefault(b, set()).add(a)
            seen = set()
            for s in adj:
                if s in seen:
                    continue
                comp = {s}
                todo = [s]
                while todo:
                    x = todo.pop()
                    for y in adj[x]:
                        if y not in comp:
                            comp.add(y)
                            todo.append(y)
                seen |= comp
                r = f.root(s)
                assert all(f.root(x) is r for x in comp), f"F_{i} does not span a component"
                assert r.nv == len(comp), f"F_{i} tree larger than its component"
                assert r.nv <= n0 >> i, f"tree at level {i} exceeds n/2^i"
            for e in self.tree:
                if self.level[e] >= i:
                    assert f.has_tree_edge(*e), f"tree edge {e} missing from F_{i}"
            for a, b in f.enode:
                e = edge_key(a, b)
                assert e in self.tree and self.level[e] >= i, f"stale edge {e} in F_{i}"
