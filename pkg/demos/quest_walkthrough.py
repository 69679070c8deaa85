"""
A ten-vertex query, stage by stage
==================================

A small hand-built network: a tight clique near the origin that lacks one
of the wanted keywords, and a larger clique further out that has all three.
We ask for the closest 4-truss holding at least two members per keyword and
watch each stage of the search narrow things down.
"""

# %%
# Build the graph from plain records: (label, x, y, keyword) and label pairs.
import itertools
import math

import numpy as np

from geotruss import GeoSocialGraph, Query
from geotruss.baselines import BASELINES
from geotruss.search import run_search

verts = [
    ("a", 0.3, 0.4, "k1"), ("b", 0.0, 0.6, "k2"), ("c", 0.7, 0.0, "k1"),
    ("j", 0.0, 0.8, "k2"), ("d", 1.0, 0.0, "k1"), ("g", 0.0, 1.2, "k2"),
    ("h", 0.9, 1.2, "k3"), ("i", 0.0, 2.0, "k2"), ("e", 1.5, 2.0, "k1"),
    ("f", 1.8, 2.4, "k3"),
]
edges = list(itertools.combinations("abcj", 2)) + list(itertools.combinations("degih", 2))
edges += [("f", "e"), ("f", "h"), ("f", "i")]
g = GeoSocialGraph.from_records(verts, edges)
print(g)

dist = np.hypot(g.xs, g.ys)
for v in np.argsort(dist, kind="stable"):
    print(f"  {g.labels[v]}  {dist[v]:.2f}  {g.keyword_names[g.keywords[v]]}")

# %%
# The query: location, keyword ids, members per keyword, trussness.
kw = tuple(g.keyword_index[k] for k in ("k1", "k2", "k3"))
q = Query((0.0, 0.0), kw, 2, 4)
rep = run_search(g, q)
st = rep.stats

# %%
# Pruning drops every edge outside a keyword-satisfying 4-truss. The near
# clique carries no k3, so only the outer one survives.
print("kept", st["h_vertices"], "of", st["g_vertices"], "vertices")

# %%
# The keyword union-find gives a radius no answer can beat, then the radius
# grows so that each step roughly doubles the number of admitted edges.
print("lower bound", round(st["lower_bound"], 3))
for r, n, ok in zip(st["expansion_radii"], st["expansion_edge_counts"],
                    st["expansion_outcomes"]):
    print(f"  radius {r:.2f}: {n:2d} edges, group found: {ok}")

# %%
# Reducing peels vertices farthest-first until no group would survive.
res = rep.result
print("answer", sorted(g.labels[v] for v in res.vertices), "dist", res.dist)
print("vertex deletions", st["reduce_vertex_deletions"],
      "links+cuts", st["forest_links"] + st["forest_cuts"], "budget", st["forest_budget"])

# %%
# Every baseline lands on the same distance.
for kind, run in BASELINES.items():
    r = run(g, q)
    print(f"  {kind.value:<14} {r.dist}")
assert math.isclose(res.dist, 3.0)
