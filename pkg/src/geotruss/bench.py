"""Parameter sweeps comparing the search pipeline with the baselines.

A plan is a list of cells ``(c, phi, rho)`` where phi counts query keywords.
Every cell runs the same number of random queries (location uniform in the
bounding box, keywords sampled from those present) against every selected
algorithm and reports mean wall time per algorithm plus pruning ratios from
the pipeline's instrumentation.
Pre-pruning to maximal (rho, c)-trusses is timed in its own column.
"""

from __future__ import annotations

import math
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .baselines import run_binary_search, run_decremental, run_incremental
from .errors import InvalidParameter
from .generate import random_query
from .graph import GeoSocialGraph, Query
from .search import run_search
from .truss import maximal_rhoc_truss

ALGORITHMS = {
    "mkasg": None,
    "inc": run_incremental,
    "dec": run_decremental,
    "bin": run_binary_search,
}
SWEEP = {"c": (3, 4, 5, 6, 7, 8), "phi": (1, 3, 5, 7, 9), "rho": (1, 3, 5, 7, 9)}
DEFAULTS = {"c": 6, "phi": 3, "rho": 3}


@dataclass
class BenchPlan:
    algorithms: Sequence[str] = ("mkasg", "inc", "dec", "bin")
    cells: Sequence[tuple[int, int, int]] = ((6, 3, 3),)
    queries: int = 5
    seed: int = 0
    delta: Fraction = Fraction(2)
    timing: bool = True
    labels: Sequence[str] = field(default_factory=list)

    def __post_init__(self):
        for a in self.algorithms:
            if a not in ALGORITHMS:
                raise InvalidParameter("algo", a, f"expected one of {', '.join(ALGORITHMS)}")
        if not self.algorithms:
            raise InvalidParameter("algo", "", "no algorithm selected")
        if self.queries < 1:
            raise InvalidParameter("queries", self.queries, "must be >= 1")
        for c, phi, rho in self.cells:
            if c < 2 or phi < 1 or rho < 1:
                raise InvalidParameter("cell", (c, phi, rho), "need c >= 2, |phi| >= 1, rho >= 1")
        if not self.labels:
            self.labels = ["cell"] * len(self.cells)

    @classmethod
    def sweep(cls, params: Sequence[str], **kw) -> "BenchPlan":
        """Vary each named parameter over its range, others at their defaults."""
        cells, labels = [], []
        for p in params:
            if p not in SWEEP:
                raise InvalidParameter("vary", p, f"expected one of {', '.join(SWEEP)}")
            for x in SWEEP[p]:
                cfg = dict(DEFAULTS, **{p: x})
                cells.append((cfg["c"], cfg["phi"], cfg["rho"]))
                labels.append(p)
        return cls(cells=cells, labels=labels, **kw)


def _one_query(g: GeoSocialGraph, q: Query, algorithms: Sequence[str]) -> dict:
    row = {"times": {}, "dists": {}}
    t0 = time.perf_counter()
    H = maximal_rhoc_truss(g, q)
    row["prune_time"] = time.perf_counter() - t0
    for name in algorithms:
        t0 = time.perf_counter()
        if name == "mkasg":
            rep = run_search(g, q)
            r = rep.result
            row["stats"] = rep.stats
        else:
            r = ALGORITHMS[name](g, q)
        row["times"][name] = time.perf_counter() - t0
        row["dists"][name] = None if r is None else r.dist
    row["h_edges"] = sum(len(t.edges) for t in H)
    return row


def _run_cell_queries(args):
    g, queries, algorithms = args
    return [_one_query(g, q, algorithms) for q in queries]


def _mean(xs):
    xs = list(xs)
    return sum(xs) / len(xs) if xs else float("nan")


def _fmt(x) -> str:
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return "-"
    if isinstance(x, float):
        return f"{x:.6f}"
    return str(x)


def cell_queries(g: GeoSocialGraph, plan: BenchPlan, index: int) -> list[Query]:
    c, phi, rho = plan.cells[index]
    rng = random.Random(plan.seed * 1_000_003 + index)
    return [random_query(rng, g, rho, c, phi, delta=plan.delta) for _ in range(plan.queries)]


def run_bench(g: GeoSocialGraph, plan: BenchPlan, workers: int | None = None) -> str:
    """Run ``plan`` on ``g`` and return the TSV table."""
    if workers is None:
        workers = int(os.environ.get("GST_THREADS", "1") or 1)
    cols = ["param", "c", "phi", "rho", "queries", "found", "agree"]
    cols += ["time_prune"] + [f"time_{a}" for a in plan.algorithms]
    cols += ["h_over_g", "expansion_over_h", "potential_over_radius", "truss_over_potential",
             "expansion_factor_max", "expansion_bound"]
    lines = ["\t".join(cols)]
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for i, (c, phi, rho) in enumerate(plan.cells):
            qs = cell_queries(g, plan, i)
            if pool is not None:
                size = max(1, math.ceil(len(qs) / workers))
                parts = [(g, qs[j:j + size], plan.algorithms) for j in range(0, len(qs), size)]
                rows = [r for part in pool.map(_run_cell_queries, parts) for r in part]
            else:
                rows = _run_cell_queries((g, qs, plan.algorithms))
            lines.append(_row(g, plan, i, rows))
    finally:
        if pool is not None:
            pool.shutdown()
    return "\n".join(lines) + "\n"


def _row(g: GeoSocialGraph, plan: BenchPlan, i: int, rows: list[dict]) -> str:
    c, phi, rho = plan.cells[i]
    ref = plan.algorithms[0]
    found = sum(r["dists"][ref] is not None for r in rows)
    agree = all(len(set(r["dists"].values())) == 1 for r in rows)
    out = [plan.labels[i], c, phi, rho, len(rows), found, int(agree)]
    if plan.timing:
        out.append(_mean(r["prune_time"] for r in rows))
        out += [_mean(r["times"][a] for r in rows) for a in plan.algorithms]
    else:
        out += [None] * (1 + len(plan.algorithms))
    m = max(g.m, 1)
    stats = [r["stats"] for r in rows if "stats" in r]
    h_ratio = _mean(r["h_edges"] / m for r in rows)
    exp_ratio = pot_ratio = truss_ratio = fmax = None
    with_exp = [s for s in stats if s.get("expansion_edge_counts")]
    if with_exp:
        exp_ratio = _mean(s["expansion_sum"] / max(s["h_edges_total"], 1) for s in with_exp)
        pot_ratio = _mean(s["potential_edges"] / max(s["expansion_edge_counts"][-1], 1)
                          for s in with_exp)
        truss_ratio = _mean(s["truss_edges"] / max(s["potential_edges"], 1) for s in with_exp)
        fmax = max(s["expansion_sum"] / s["expansion_edge_counts"][-1] for s in with_exp)
    d = Fraction(plan.delta)
    out += [h_ratio, exp_ratio, pot_ratio, truss_ratio, fmax, float(1 + d / (d - 1))]
    return "\t".join(_fmt(x) for x in out)
