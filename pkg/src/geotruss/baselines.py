"""Reference algorithms: incremental, decremental and binary-search baselines,
plus an exhaustive optimum and naive truss routines used as test oracles.

Everything here is written independently of the search pipeline; the only
shared pieces are the graph model and ``compute_support``.
"""

from __future__ import annotations

import enum
from bisect import bisect_right
from typing import Sequence

from .errors import InstanceTooLarge
from .graph import GeoSocialGraph, GroupResult, Query
from .truss import compute_support


class BaselineKind(enum.Enum):
    incremental = "incremental"
    decremental = "decremental"
    binary_search = "binary_search"


# -- naive oracles -----------------------------------------------------------

def naive_support(n: int, edges) -> dict[tuple[int, int], int]:
    """Triangle count per edge by enumerating all vertex triples."""
    es = {(min(u, v), max(u, v)) for u, v in edges}
    sup = {e: 0 for e in es}
    for a in range(n):
        for b in range(a + 1, n):
            if (a, b) not in es:
                continue
            for c in range(b + 1, n):
                if (a, c) in es and (b, c) in es:
                    sup[(a, b)] += 1
                    sup[(a, c)] += 1
                    sup[(b, c)] += 1
    return sup


def naive_ctruss(n: int, edges, c: int) -> set[tuple[int, int]]:
    """Maximal c-truss edge set: recount all supports by brute force each round."""
    es = {(min(u, v), max(u, v)) for u, v in edges}
    while True:
        sup = naive_support(n, es)
        bad = {e for e, s in sup.items() if s < c - 2}
        if not bad:
            return es
        es -= bad


def truss_decomposition(adj: dict[int, set[int]]) -> dict[tuple[int, int], int]:
    """Trussness of every edge: the largest c whose c-truss still holds it."""
    adj = {v: set(nb) for v, nb in adj.items()}
    sup = compute_support(adj)
    out = {}
    c = 2
    while sup:
        c += 1
        stack = [e for e, s in sup.items() if s < c - 2]
        while stack:
            e = stack.pop()
            if e not in sup:
                continue
            u, v = e
            del sup[e]
            out[e] = c - 1
            for w in adj[u] & adj[v]:
                for f in ((min(u, w), max(u, w)), (min(v, w), max(v, w))):
                    sup[f] -= 1
                    if sup[f] < c - 2:
                        stack.append(f)
            adj[u].discard(v)
            adj[v].discard(u)
    return out


# -- shared helpers (local to this module) ------------------------------------

def _peel(adj: dict[int, set[int]], c: int) -> dict[int, set[int]]:
    need = c - 2
    adj = {v: set(nb) for v, nb in adj.items()}
    sup = compute_support(adj)
    stack = [e for e, s in sup.items() if s < need]
    gone = set(stack)
    while stack:
        u, v = stack.pop()
        for w in adj[u] & adj[v]:
            for e in ((min(u, w), max(u, w)), (min(v, w), max(v, w))):
                sup[e] -= 1
                if sup[e] < need and e not in gone:
                    gone.add(e)
                    stack.append(e)
        adj[u].discard(v)
        adj[v].discard(u)
    return {v: nb for v, nb in adj.items() if nb}


def _satisfying(adj: dict[int, set[int]], g: GeoSocialGraph, q: Query,
                sq: Sequence[float]) -> list[tuple[float, list[int]]]:
    """Connected components (DFS) that meet the keyword constraint, nearest first."""
    want = {k: i for i, k in enumerate(q.keywords)}
    out = []
    seen = set()
    for s in sorted(adj):
        if s in seen:
            continue
        seen.add(s)
        comp = []
        stack = [s]
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        counts = [0] * len(want)
        for x in comp:
            i = want.get(g.keywords[x])
            if i is not None:
                counts[i] += 1
        if min(counts) >= q.rho:
            comp.sort()
            out.append((max(sq[x] for x in comp), comp))
    out.sort()
    return out


def _induced(g: GeoSocialGraph, vs) -> dict[int, set[int]]:
    keep = set(vs)
    adj = {}
    for v in keep:
        nb = {w for w in g.adj[v] if w in keep}
        if nb:
            adj[v] = nb
    return adj


def _check(g: GeoSocialGraph, q: Query, vs, sq) -> tuple[list[int], dict] | None:
    truss = _peel(_induced(g, vs), q.c)
    found = _satisfying(truss, g, q, sq)
    if not found:
        return None
    comp = found[0][1]
    return comp, truss


def _result(g: GeoSocialGraph, q: Query, comp: list[int], truss: dict, stats) -> GroupResult:
    cs = set(comp)
    edges = [(u, v) for u in comp for v in truss[u] if u < v and v in cs]
    return GroupResult.build(g, q.location, comp, edges, stats)


def _nearest_order(g: GeoSocialGraph, sq) -> list[int]:
    return sorted(range(g.n), key=lambda v: (sq[v], v))


# -- baselines ---------------------------------------------------------------

def run_incremental(g: GeoSocialGraph, q: Query) -> GroupResult | None:
    """Add vertices nearest-first; re-check the whole candidate after each one."""
    sq = g.sq_distances(q.location)
    cand = []
    checks = 0
    for v in _nearest_order(g, sq):
        cand.append(v)
        checks += 1
        hit = _check(g, q, cand, sq)
        if hit is not None:
            return _result(g, q, hit[0], hit[1], {"checks": checks})
    return None


def run_decremental(g: GeoSocialGraph, q: Query) -> GroupResult | None:
    """Start from the maximal (rho, c)-trusses and delete the farthest vertex
    until no keyword-satisfying connected c-truss remains."""
    sq = g.sq_distances(q.location)
    adj = _peel({v: set(nb) for v, nb in enumerate(g.adj) if nb}, q.c)
    found = _satisfying(adj, g, q, sq)
    if not found:
        return None
    keep = {x for _, comp in found for x in comp}
    adj = {v: nb & keep for v, nb in adj.items() if v in keep}
    last = (found[0][1], adj)
    checks = 1
    for v in sorted(keep, key=lambda x: (sq[x], x), reverse=True):
        if v not in adj:
            continue
        adj = {x: set(nb) for x, nb in adj.items()}
        for w in adj.pop(v):
            adj[w].discard(v)
        adj = _peel(adj, q.c)
        checks += 1
        found = _satisfying(adj, g, q, sq)
        if not found:
            break
        last = (found[0][1], adj)
    comp, truss = last
    return _result(g, q, comp, truss, {"checks": checks})


def run_binary_search(g: GeoSocialGraph, q: Query) -> GroupResult | None:
    """Binary search over the distinct vertex distances.

    Range retrieval uses a distance-sorted vertex array in place of a
    spatial index.
    """
    sq = g.sq_distances(q.location)
    order = _nearest_order(g, sq)
    keys = [sq[v] for v in order]
    radii = sorted(set(keys))
    lo, hi = 0, len(radii) - 1
    best = None
    checks = 0
    while lo <= hi:
        mid = (lo + hi) // 2
        checks += 1
        hit = _check(g, q, order[:bisect_right(keys, radii[mid])], sq)
        if hit is not None:
            best = hit
            hi = mid - 1
        else:
            lo = mid + 1
    if best is None:
        return None
    return _result(g, q, best[0], best[1], {"checks": checks})


def brute_force_optimum(g: GeoSocialGraph, q: Query, cap: int = 64) -> GroupResult | None:
    """Check every vertex radius in ascending order; the first hit is optimal."""
    if g.n > cap:
        raise InstanceTooLarge(f"{g.n} vertices exceeds cap {cap}")
    sq = g.sq_distances(q.location)
    order = _nearest_order(g, sq)
    keys = [sq[v] for v in order]
    checks = 0
    for r in sorted(set(keys)):
        checks += 1
        hit = _check(g, q, order[:bisect_right(keys, r)], sq)
        if hit is not None:
            return _result(g, q, hit[0], hit[1], {"checks": checks})
    return None


def group_within(g: GeoSocialGraph, q: Query, radius_sq: float) -> GroupResult | None:
    """A valid group using only vertices whose squared distance is <= ``radius_sq``."""
    sq = g.sq_distances(q.location)
    hit = _check(g, q, [v for v in range(g.n) if sq[v] <= radius_sq], sq)
    if hit is None:
        return None
    return _result(g, q, hit[0], hit[1], {})


BASELINES = {
    BaselineKind.incremental: run_incremental,
    BaselineKind.decremental: run_decremental,
    BaselineKind.binary_search: run_binary_search,
}
