"""Seeded random instances for the agreement suite, the benchmark and tests."""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .graph import GeoSocialGraph, Query


@dataclass
class Instance:
    graph: GeoSocialGraph
    query: Query
    seed: int


def random_graph(rng: random.Random, n: int, p: float, n_keywords: int,
                 grid: bool = False) -> GeoSocialGraph:
    """Erdos-Renyi graph with uniform coordinates and uniform keywords.

    With ``grid`` set, coordinates are small integers so that many vertices
    share a distance to any integer query point.
    """
    if grid:
        xs = [float(rng.randint(0, 6)) for _ in range(n)]
        ys = [float(rng.randint(0, 6)) for _ in range(n)]
    else:
        xs = [rng.uniform(0, 10) for _ in range(n)]
        ys = [rng.uniform(0, 10) for _ in range(n)]
    kws = [rng.randrange(n_keywords) for _ in range(n)]
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    names = [f"k{i + 1}" for i in range(n_keywords)]
    labels = [f"v{v:03d}" for v in range(n)]
    return GeoSocialGraph.from_edges(n, edges, xs, ys, kws, labels, names)


def random_query(rng: random.Random, g: GeoSocialGraph, rho: int, c: int,
                 n_query_keywords: int, grid: bool = False, delta=2) -> Query:
    """Location uniform over the bounding box, keywords drawn from those present."""
    lo_x, hi_x = float(np.min(g.xs)), float(np.max(g.xs))
    lo_y, hi_y = float(np.min(g.ys)), float(np.max(g.ys))
    if grid:
        loc = (float(rng.randint(int(lo_x), int(hi_x))), float(rng.randint(int(lo_y), int(hi_y))))
    else:
        loc = (rng.uniform(lo_x, hi_x), rng.uniform(lo_y, hi_y))
    present = sorted(set(g.keywords))
    kws = rng.sample(present, min(n_query_keywords, len(present)))
    return Query(loc, tuple(kws), rho, c, delta)


def agreement_instance(seed: int, max_n: int = 40) -> Instance:
    """One small instance in the shape used by the optimality suite."""
    rng = random.Random(seed)
    n = rng.randint(5, max(5, max_n))
    p = rng.uniform(0.2, 0.4)
    n_kw = rng.randint(3, 5)
    grid = rng.random() < 0.25
    g = random_graph(rng, n, p, n_kw, grid)
    q = random_query(rng, g, rng.choice((1, 2)), rng.choice((3, 4)),
                     rng.randint(1, min(3, n_kw)), grid)
    return Instance(g, q, seed)


def community_graph(rng: random.Random, n: int, n_keywords: int, size: tuple[int, int] = (8, 16),
                    p_in: float = 0.7, p_out: float = 0.01, spread: float = 1.0) -> GeoSocialGraph:
    """Dense spatially clustered communities joined by sparse random edges.

    Each community gets a centre uniform in ``[0, 100]^2``; members scatter
    around it with standard deviation ``spread``. This gives trusses of high
    trussness, which uniform random graphs of bench size rarely contain.
    """
    groups = []
    v = 0
    while v < n:
        k = min(rng.randint(*size), n - v)
        groups.append(range(v, v + k))
        v += k
    xs, ys = [0.0] * n, [0.0] * n
    edges = set()
    for grp in groups:
        cx, cy = rng.uniform(0, 100), rng.uniform(0, 100)
        for a in grp:
            xs[a] = cx + rng.gauss(0, spread)
            ys[a] = cy + rng.gauss(0, spread)
            for b in grp:
                if a < b and rng.random() < p_in:
                    edges.add((a, b))
    n_out = int(p_out * n * (n - 1) / 2)
    for _ in range(n_out):
        a, b = rng.randrange(n), rng.randrange(n)
        if a != b:
            edges.add((min(a, b), max(a, b)))
    kws = [rng.randrange(n_keywords) for _ in range(n)]
    names = [f"k{i + 1}" for i in range(n_keywords)]
    labels = [f"u{a:05d}" for a in range(n)]
    return GeoSocialGraph.from_edges(n, sorted(edges), xs, ys, kws, labels, names)
