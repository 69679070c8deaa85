"""Expanding stage: grow the search radius until a (rho, c)-truss appears.

Radii grow so that consecutive edge counts differ by at least the query's
``delta`` factor. Truss checking is lazy: it only touches components of the
current radius graph that already meet the keyword constraint, and only the
edges not yet known to be truss edges are peeled.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .dsu import KeywordDSU, find_lower_bound_radius
from .graph import Edge, GeoSocialGraph, Query, edge_key
from .spatial import SortedEdgeArray
from .truss import TrussSubgraph, peel


@dataclass
class Candidate:
    """Union of keyword-satisfying truss components found at one radius."""

    components: list[tuple[tuple[int, ...], tuple[Edge, ...]]]
    radius_sq: float

    @property
    def vertices(self) -> list[int]:
        return sorted(v for vs, _ in self.components for v in vs)

    @property
    def edges(self) -> list[Edge]:
        return sorted(e for _, es in self.components for e in es)


@dataclass
class StepRecord:
    radius_sq: float
    edges: int
    found: bool
    potential_vertices: int = 0
    potential_edges: int = 0
    tp_vertices: int = 0
    candidate_edges: int = 0
    truss_vertices: int = 0
    truss_edges: int = 0


class ExpandState:
    """Incremental structures shared by successive expansion steps.

    Attributes
    ----------
    adj : dict
        Adjacency of the current radius graph.
    uf : KeywordDSU
        Components of the radius graph; satisfied sets are the potential
        subgraphs.
    tuf : KeywordDSU
        Components of the admitted truss edges.
    truss_edges : set
        Edges admitted into some maintained c-truss.
    pending : set
        Radius-graph edges not (yet) admitted.
    """

    def __init__(self, g: GeoSocialGraph, q: Query, literal_tp: bool = False):
        self.g = g
        self.literal_tp = literal_tp
        self.q = q
        self.slots = q.slots()
        self.adj: dict[int, set[int]] = {}
        self.uf = KeywordDSU(self.slots, q.rho)
        self.tuf = KeywordDSU(self.slots, q.rho)
        self.truss_edges: set[Edge] = set()
        self.pending: set[Edge] = set()
        self.radius_sq = float("-inf")
        self.edge_count = 0
        self.steps: list[StepRecord] = []
        self.support_work = 0
        self.last_tp_vertices: set[int] = set()

    def ingest(self, edges: Sequence[Edge]) -> None:
        kw = self.g.keywords
        uf, adj = self.uf, self.adj
        for u, v in edges:
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
            if u not in uf:
                uf.insert_vertex(u, kw[u])
            if v not in uf:
                uf.insert_vertex(v, kw[v])
            uf.union_edge(u, v)
            self.pending.add((u, v) if u < v else (v, u))
        self.edge_count += len(edges)

    def _admit(self, candidates: list[Edge]) -> list[Edge]:
        """Peel the candidate edges with already-admitted edges held fixed.

        Triangle support counts every triangle in the radius graph; admitted
        edges can never drop out, so only candidates are queued.
        """
        adj, need = self.adj, self.q.c - 2
        cand = set(candidates)
        sup = {}
        for u, v in candidates:
            nu, nv = adj[u], adj[v]
            sup[(u, v)] = len(nu & nv) if len(nu) <= len(nv) else len(nv & nu)
            self.support_work += min(len(nu), len(nv))
        queue = deque(e for e in candidates if sup[e] < need)
        dead = set(queue)
        # removed candidates are hidden from triangle scans through ``gone``
        gone: set[Edge] = set()
        while queue:
            e = queue.popleft()
            u, v = e
            for w in (adj[u] & adj[v]):
                f1, f2 = edge_key(u, w), edge_key(v, w)
                if f1 in gone or f2 in gone:
                    continue
                for f in (f1, f2):
                    if f in cand:
                        sup[f] -= 1
                        if sup[f] < need and f not in dead:
                            dead.add(f)
                            queue.append(f)
            gone.add(e)
        return [e for e in candidates if e not in dead]

    def _admit_induced(self, tp: set[int], candidates: list[Edge]) -> list[Edge]:
        """Peel the subgraph induced on ``tp`` alone (triangles leaving it are ignored)."""
        sub = {x: self.adj[x] & tp for x in tp}
        kept = peel(sub, self.q.c)
        return [(u, v) for u, v in candidates if u in kept and v in kept[u]]

    def step(self, edges: Sequence[Edge], radius_sq: float) -> Candidate | None:
        """One radius step: ingest ``edges``, admit new truss edges, test keywords."""
        self.radius_sq = radius_sq
        if not edges:
            return None
        self.ingest(edges)
        uf = self.uf
        sat = uf.satisfied_roots
        candidates = sorted(e for e in self.pending if uf.find(e[0]) in sat)
        pot_vertices = sum(len(uf.members[r]) for r in sat)
        pot_edges = len(candidates) + sum(1 for e in self.truss_edges if uf.find(e[0]) in sat)
        tp = {x for e in candidates for x in e}
        self.last_tp_vertices = tp
        if not candidates:
            admitted = []
        elif self.literal_tp:
            admitted = self._admit_induced(tp, candidates)
        else:
            admitted = self._admit(candidates)
        kw = self.g.keywords
        tuf = self.tuf
        for u, v in admitted:
            self.pending.discard((u, v))
            self.truss_edges.add((u, v))
            if u not in tuf:
                tuf.insert_vertex(u, kw[u])
            if v not in tuf:
                tuf.insert_vertex(v, kw[v])
            tuf.union_edge(u, v)
        rec = StepRecord(
            radius_sq=radius_sq,
            edges=self.edge_count,
            found=bool(tuf.satisfied_roots),
            potential_vertices=pot_vertices,
            potential_edges=pot_edges,
            tp_vertices=len(tp),
            candidate_edges=len(candidates),
            truss_vertices=len(tuf),
            truss_edges=len(self.truss_edges),
        )
        self.steps.append(rec)
        if not tuf.satisfied_roots:
            return None
        return self.candidate()

    def candidate(self) -> Candidate | None:
        tuf = self.tuf
        roots = sorted(tuf.satisfied_roots)
        if not roots:
            return None
        by_root: dict[int, list[Edge]] = {r: [] for r in roots}
        for e in self.truss_edges:
            r = tuf.find(e[0])
            if r in by_root:
                by_root[r].append(e)
        comps = [(tuple(sorted(tuf.members[r])), tuple(sorted(by_root[r]))) for r in roots]
        comps.sort()
        return Candidate(comps, self.radius_sq)


def expand_step(s: ExpandState, a: SortedEdgeArray, radius_sq: float) -> Candidate | None:
    return s.step(a.edges_up_to(radius_sq), radius_sq)


@dataclass
class ExpansionOutcome:
    candidate: Candidate | None
    state: ExpandState
    lower_bound_sq: float | None
    lower_bound_scanned: int = 0
    stats: dict = field(default_factory=dict)


def run_expanding(H: Sequence[TrussSubgraph], a: SortedEdgeArray, g: GeoSocialGraph,
                  q: Query, literal_tp: bool = False) -> ExpansionOutcome:
    """Grow the radius from the keyword lower bound until a candidate exists."""
    state = ExpandState(g, q, literal_tp)
    lb = find_lower_bound_radius(a.fresh(), g, q, state.slots)
    if lb is None or not len(a):
        return ExpansionOutcome(None, state, None, len(a), _stats(state, a, None))
    radius_sq, _, _, scanned = lb
    cand = expand_step(state, a, radius_sq)
    delta = q.delta
    while cand is None and not a.exhausted:
        target = math.ceil(delta * state.edge_count)
        radius_sq = a.radius_for_target_edges(target)
        cand = expand_step(state, a, radius_sq)
    return ExpansionOutcome(cand, state, lb[0], scanned, _stats(state, a, lb[0]))


def _stats(state: ExpandState, a: SortedEdgeArray, lb_sq: float | None) -> dict:
    counts = [s.edges for s in state.steps]
    delta = state.q.delta
    factor = 1 + delta / (delta - 1)
    last = state.steps[-1] if state.steps else None
    return {
        "lower_bound": None if lb_sq is None else math.sqrt(lb_sq),
        "expansion_radii": [math.sqrt(s.radius_sq) for s in state.steps],
        "expansion_edge_counts": counts,
        "expansion_outcomes": [s.found for s in state.steps],
        "expansion_sum": sum(counts),
        "expansion_bound": float(factor * counts[-1]) if counts else 0.0,
        "expansion_factor": float(factor),
        "h_edges_total": len(a),
        "potential_vertices": last.potential_vertices if last else 0,
        "potential_edges": last.potential_edges if last else 0,
        "tp_vertices": last.tp_vertices if last else 0,
        "truss_vertices": last.truss_vertices if last else 0,
        "truss_edges": last.truss_edges if last else 0,
        "radius_vertices": len(state.adj),
        "support_work": state.support_work,
    }
