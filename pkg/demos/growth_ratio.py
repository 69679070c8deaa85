"""
How the growth ratio trades steps for overshoot
===============================================

The expanding stage raises the radius so that the admitted edge count grows
by a fixed ratio per step. A small ratio takes many cheap steps; a large one
takes few steps but may admit far more edges than the answer needs. This
script sweeps the ratio over a batch of random queries on a clustered
synthetic network and reports both sides, together with the worst observed
value of the summed edge counts over the final count.
"""

# %%
import random
from fractions import Fraction

import numpy as np

from geotruss import Query
from geotruss.generate import community_graph
from geotruss.search import run_search

rng = random.Random(7)
g = community_graph(rng, 400, 5, size=(20, 40), p_in=0.5)
print(g)

queries = []
while len(queries) < 25:
    loc = (rng.uniform(0, 10), rng.uniform(0, 10))
    queries.append((loc, tuple(sorted(rng.sample(range(5), 2)))))

# %%
print(f"{'ratio':>6} {'found':>6} {'steps':>6} {'sum/last':>9} {'bound':>6} {'overshoot':>10}")
for ratio in (Fraction(5, 4), Fraction(3, 2), Fraction(2), Fraction(4)):
    steps, sums, over, found = [], [], [], 0
    for loc, kws in queries:
        rep = run_search(g, Query(loc, kws, 2, 5, ratio))
        counts = rep.stats.get("expansion_edge_counts")
        if not counts or rep.result is None:
            continue
        found += 1
        steps.append(len(counts))
        sums.append(sum(counts) / counts[-1])
        # edges admitted at the last step versus edges handed to reducing
        over.append(counts[-1] / max(rep.stats["candidate_edges"], 1))
    bound = float(1 + ratio / (ratio - 1))
    print(f"{float(ratio):6.2f} {found:6d} {np.mean(steps):6.1f} {max(sums):9.2f} "
          f"{bound:6.2f} {np.mean(over):10.2f}")
