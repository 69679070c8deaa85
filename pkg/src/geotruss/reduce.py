"""Reducing stage: peel the farthest vertices off the expansion candidate.

Vertices are deleted farthest-first. Each deletion cascades through the live
c-truss; every edge the cascade removes is reported to the keyword spanning
forest, which answers whether any connected, keyword-satisfying component is
left. The first deletion after which none is left ends the search, and the
answer is the best component of the structure as it stood just before that
deletion.
"""

from __future__ import annotations

import math
from collections import deque
from typing import Sequence

from .errors import InvalidCandidate
from .expand import Candidate
from .forest import KeywordSpanningForest
from .graph import Edge, GeoSocialGraph, GroupResult, Query, validate_group
from .truss import TrussState


def _best_component(edges: Sequence[Edge], g: GeoSocialGraph, q: Query,
                    sq: Sequence[float]) -> tuple[list[int], list[Edge]] | None:
    adj: dict[int, set[int]] = {}
    for u, v in edges:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    slot = q.slots()
    best = None
    seen = set()
    for s in sorted(adj):
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        todo = deque([s])
        while todo:
            x = todo.popleft()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    todo.append(y)
        counts = [0] * len(slot)
        for x in comp:
            i = slot.get(g.keywords[x])
            if i is not None:
                counts[i] += 1
        if min(counts) < q.rho:
            continue
        comp.sort()
        key = (max(sq[x] for x in comp), comp)
        if best is None or key < best[0]:
            best = (key, comp)
    if best is None:
        return None
    comp = best[1]
    cs = set(comp)
    return comp, sorted(e for e in edges if e[0] in cs)


def run_reducing(candidate: Candidate, g: GeoSocialGraph, q: Query,
                 sq: Sequence[float] | None = None, *, cascade: bool = True,
                 check: bool = True) -> GroupResult:
    """Shrink ``candidate`` to the group closest to the query location.

    Raises InvalidCandidate when a candidate component is not a valid group
    (only checked when ``check`` is set).
    """
    if sq is None:
        sq = g.sq_distances(q.location)
    if not candidate.components:
        raise InvalidCandidate("empty candidate")
    if check:
        for vs, es in candidate.components:
            r = GroupResult.build(g, q.location, vs, es)
            if not validate_group(r, q, g):
                raise InvalidCandidate(f"component with {len(vs)} vertices fails validation")
    verts = candidate.vertices
    edges = candidate.edges
    slot = q.slots()
    slot_of = {v: slot.get(g.keywords[v], -1) for v in verts}
    state = TrussState(edges, q.c, cascade=cascade)
    forest = KeywordSpanningForest.build(verts, edges, slot_of, len(slot), q.rho, prune=True)
    order = sorted(verts, key=lambda v: (sq[v], v), reverse=True)

    deletions = 0
    skipped = 0
    restore: list[Edge] = []
    halted = False
    for v in order:
        if not state.has_vertex(v):
            skipped += 1
            continue
        pruned: list[int] = []

        def report(e: Edge) -> bool:
            if not forest.has_edge(*e):
                return True
            ok = forest.ck_checking(e)
            pruned.extend(forest.last_pruned)
            return ok

        removed, completed = state.delete_vertex(v, report)
        deletions += 1
        if not completed:
            restore = removed
            halted = True
            break
        if pruned:
            dead = set(pruned)
            stale = sorted({(min(x, y), max(x, y)) for x in dead if state.has_vertex(x)
                            for y in state.adj[x]})
            state.remove_edges(stale)

    survivors = state.edges() + restore
    best = _best_component(survivors, g, q, sq)
    if best is None:
        raise InvalidCandidate("no satisfying component survived; candidate was not a group")
    comp, comp_edges = best
    stats = {
        "candidate_vertices": len(verts),
        "candidate_edges": len(edges),
        "reduce_vertex_deletions": deletions,
        "reduce_skipped_vertices": skipped,
        "reduce_edges_removed": state.removed_count,
        "reduce_halted": halted,
        "forest_links": forest.links,
        "forest_cuts": forest.cuts,
        "forest_promotions": forest.promotions,
        "forest_replacements": forest.replacements,
        "forest_max_level": forest.max_level,
        "forest_pruned_vertices": len(forest.pruned),
        "forest_budget": 8 * len(edges) * math.ceil(math.log2(max(len(verts), 2))) ** 2,
    }
    return GroupResult.build(g, q.location, comp, comp_edges, stats)
