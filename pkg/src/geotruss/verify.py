"""Randomised agreement suite.

Each trial draws a small instance and runs the search pipeline, the three
baselines and the exhaustive optimum on it, then checks the instrumented
bounds of the pipeline and runs the structure oracles (truss peeling,
keyword union-find counters, dynamic forest). The report is plain text and
deterministic for a given seed; any failing trial is dumped in the loader's
file format so it can be replayed with ``geotruss query``.
"""

from __future__ import annotations

import json
import math
import os
import random
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .baselines import (BASELINES, brute_force_optimum, group_within, naive_ctruss)
from .dsu import KeywordDSU
from .forest import KeywordSpanningForest
from .generate import agreement_instance
from .graph import GeoSocialGraph, Query, validate_group
from .search import run_search
from .truss import TrussState, extract_ctruss, graph_adjacency, peel

CHECKS = (
    "optimality", "baselines", "validity", "expansion_sum", "lower_bound",
    "bracket", "reduce_budget", "truss", "truss_decremental", "dsu", "forest",
)
FAULTS = ("none", "skip_cascade")


@dataclass
class TrialOutcome:
    seed: int
    found: bool
    failures: list[tuple[str, str]] = field(default_factory=list)
    counted: dict = field(default_factory=dict)


def _bfs_components(adj: dict[int, set[int]]) -> list[list[int]]:
    seen = set()
    out = []
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
        out.append(sorted(comp))
    return sorted(out)


def _dist(r):
    return None if r is None else r.dist


# -- per-trial checks ----------------------------------------------------------

def _pipeline_checks(g: GeoSocialGraph, q: Query, fault: str, out: TrialOutcome) -> None:
    fail = out.failures.append
    best = brute_force_optimum(g, q)
    out.found = best is not None
    try:
        rep = run_search(g, q, cascade=(fault != "skip_cascade"))
    except Exception as exc:  # a crash is a disagreement, not a suite error
        fail(("optimality", f"pipeline raised {type(exc).__name__}: {exc}"))
        return
    r = rep.result
    if _dist(r) != _dist(best):
        fail(("optimality", f"pipeline dist {_dist(r)!r} != optimum {_dist(best)!r}"))
    for kind, fn in BASELINES.items():
        b = fn(g, q)
        if _dist(b) != _dist(best):
            fail(("baselines", f"{kind.value} dist {_dist(b)!r} != optimum {_dist(best)!r}"))
        if b is not None and not validate_group(b, q, g):
            fail(("validity", f"{kind.value} returned an invalid group"))
    if r is not None and not validate_group(r, q, g):
        fail(("validity", "pipeline returned an invalid group"))

    st = rep.stats
    counts = st.get("expansion_edge_counts")
    if counts:
        d = Fraction(q.delta)
        out.counted["expansion_sum"] = 1
        if sum(counts) * (d - 1) > (2 * d - 1) * counts[-1]:
            fail(("expansion_sum", f"sum {sum(counts)} exceeds {float(1 + d / (d - 1))} * {counts[-1]}"))
    if r is None:
        return
    out.counted["lower_bound"] = 1
    lb = st.get("lower_bound")
    if lb is None or lb > r.dist:
        fail(("lower_bound", f"lower bound {lb!r} above result {r.dist!r}"))
    steps = rep.expansion.state.steps
    if len(steps) >= 2:
        out.counted["bracket"] = 1
        if steps[-2].found or not steps[-1].found:
            fail(("bracket", "step outcomes are not (..., none, found)"))
        elif group_within(g, q, steps[-2].radius_sq) is not None:
            fail(("bracket", f"radius {math.sqrt(steps[-2].radius_sq)!r} already holds a group"))
    if "forest_budget" in st:
        out.counted["reduce_budget"] = 1
        ops = st["forest_links"] + st["forest_cuts"]
        if ops > st["forest_budget"]:
            fail(("reduce_budget", f"{ops} link/cut operations > budget {st['forest_budget']}"))


def _truss_checks(g: GeoSocialGraph, q: Query, rng: random.Random, out: TrialOutcome) -> None:
    fail = out.failures.append
    for c in (q.c, q.c + 1):
        got = {e for t in extract_ctruss(graph_adjacency(g), c) for e in t.edges}
        if got != naive_ctruss(g.n, g.edges(), c):
            fail(("truss", f"extract_ctruss differs from naive peeling at c={c}"))
    edges = sorted({e for t in extract_ctruss(graph_adjacency(g), q.c) for e in t.edges})
    state = TrussState(edges, q.c)
    order = sorted(state.adj)
    rng.shuffle(order)
    for v in order:
        if not state.has_vertex(v):
            continue
        before = {x: set(nb) for x, nb in state.adj.items()}
        state.delete_vertex(v, lambda e: True)
        before.pop(v, None)
        for x in before:
            before[x].discard(v)
        want = sorted((a, b) for a, nb in peel(before, q.c).items() for b in nb if a < b)
        if state.edges() != want:
            fail(("truss_decremental", f"state after deleting {v} differs from re-extraction"))
            return


def _dsu_checks(g: GeoSocialGraph, q: Query, rng: random.Random, out: TrialOutcome) -> None:
    slots = q.slots()
    d = KeywordDSU(slots, q.rho)
    for v in range(g.n):
        d.insert_vertex(v, g.keywords[v])
    edges = g.edges()
    rng.shuffle(edges)
    adj = {v: set() for v in range(g.n)}
    for i, (u, v) in enumerate(edges):
        d.union_edge(u, v)
        adj[u].add(v)
        adj[v].add(u)
        if i % 7 and i != len(edges) - 1:
            continue
        want_sat = []
        for comp in _bfs_components(adj):
            counts = [0] * len(slots)
            for x in comp:
                k = slots.get(g.keywords[x])
                if k is not None:
                    counts[k] += 1
            if d.set_counts(comp[0]) != counts or any(d.find(x) != d.find(comp[0]) for x in comp):
                out.failures.append(("dsu", f"counters wrong after {i + 1} unions"))
                return
            if min(counts) >= q.rho:
                want_sat.append(comp)
        got = sorted(sorted(m) for _, m in d.satisfied_sets())
        if got != want_sat:
            out.failures.append(("dsu", f"satisfied sets wrong after {i + 1} unions"))
            return


def _forest_checks(g: GeoSocialGraph, q: Query, rng: random.Random, out: TrialOutcome) -> None:
    slots = q.slots()
    verts = [v for v in range(g.n) if g.adj[v]]
    if not verts:
        return
    slot_of = {v: slots.get(g.keywords[v], -1) for v in verts}
    edges = g.edges()
    f = KeywordSpanningForest.build(verts, edges, slot_of, len(slots), q.rho, prune=False)
    cap = math.ceil(math.log2(max(len(verts), 2)))
    adj = {v: set() for v in verts}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    rng.shuffle(edges)
    for u, v in edges:
        f.ck_checking((u, v))
        adj[u].discard(v)
        adj[v].discard(u)
        want = []
        for comp in _bfs_components(adj):
            counts = [0] * len(slots)
            for x in comp:
                if slot_of[x] >= 0:
                    counts[slot_of[x]] += 1
            want.append((comp, counts))
        if f.components() != sorted(want):
            out.failures.append(("forest", f"components differ after deleting ({u}, {v})"))
            return
        if f.max_level > cap:
            out.failures.append(("forest", f"edge level {f.max_level} exceeds {cap}"))
            return


def run_trial(seed: int, max_n: int = 40, fault: str = "none",
              structure: bool = True) -> TrialOutcome:
    inst = agreement_instance(seed, max_n)
    g, q = inst.graph, inst.query
    out = TrialOutcome(seed, False)
    _pipeline_checks(g, q, fault, out)
    if structure:
        rng = random.Random(seed ^ 0x5EED)
        _truss_checks(g, q, rng, out)
        _dsu_checks(g, q, rng, out)
        _forest_checks(g, q, rng, out)
    return out


def _run_chunk(args):
    seeds, max_n, fault, structure = args
    return [run_trial(s, max_n, fault, structure) for s in seeds]


# -- suite -------------------------------------------------------------------

def trial_seeds(seed: int, trials: int) -> list[int]:
    rng = random.Random(seed)
    return [rng.getrandbits(48) for _ in range(trials)]


def dump_instance(seed: int, max_n: int = 40) -> str:
    """Replayable text dump: vertex file, edge file and query JSON."""
    inst = agreement_instance(seed, max_n)
    g, q = inst.graph, inst.query
    lines = [f"# instance seed {seed}", "# --- vertices.tsv"]
    for v in range(g.n):
        lines.append(f"{g.labels[v]}\t{float(g.xs[v])!r}\t{float(g.ys[v])!r}\t"
                     f"{g.keyword_names[g.keywords[v]]}")
    lines.append("# --- edges.tsv")
    for u, v in g.edges():
        lines.append(f"{g.labels[u]}\t{g.labels[v]}")
    lines.append("# --- query.json")
    lines.append(json.dumps({
        "lambda": list(q.location),
        "keywords": [g.keyword_names[k] for k in q.keywords],
        "rho": q.rho, "c": q.c, "delta": str(q.delta),
    }))
    return "\n".join(lines)


@dataclass
class VerifyReport:
    text: str
    passed: bool
    # check name -> (failing trials, trials where the check applied)
    checks: dict = field(default_factory=dict)
    found: int = 0


def verify(trials: int = 1000, seed: int = 0, max_n: int = 40, fault: str = "none",
           structure: bool = True, workers: int | None = None) -> VerifyReport:
    """Run ``trials`` random trials; the report text does not depend on ``workers``."""
    if fault not in FAULTS:
        raise ValueError(f"unknown fault {fault!r}")
    if workers is None:
        workers = int(os.environ.get("GST_THREADS", "1") or 1)
    seeds = trial_seeds(seed, trials)
    if workers > 1 and trials > 1:
        size = max(1, math.ceil(len(seeds) / (workers * 4)))
        chunks = [(seeds[i:i + size], max_n, fault, structure) for i in range(0, len(seeds), size)]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            outcomes = [o for part in ex.map(_run_chunk, chunks) for o in part]
    else:
        outcomes = _run_chunk((seeds, max_n, fault, structure))

    lines = [f"verify trials={trials} seed={seed} max_n={max_n} fault={fault}"]
    if trials == 0:
        lines.append("warning: no trials run, pass is vacuous")
    failed = {c: [] for c in CHECKS}
    applicable = {c: 0 for c in CHECKS}
    for o in outcomes:
        for c in ("optimality", "baselines", "validity"):
            applicable[c] += 1
        if structure:
            for c in ("truss", "truss_decremental", "dsu", "forest"):
                applicable[c] += 1
        for c in o.counted:
            applicable[c] += 1
        for c, msg in o.failures:
            failed[c].append((o.seed, msg))
    tally = {}
    for c in CHECKS:
        bad = {s for s, _ in failed[c]}
        tally[c] = (len(bad), applicable[c])
        status = "FAIL" if bad else "pass"
        lines.append(f"{c:<18} {status} {applicable[c] - len(bad)}/{applicable[c]}")
    lines.append(f"instances with a group: {sum(o.found for o in outcomes)}/{trials}")
    passed = not any(failed.values())
    if not passed:
        first = min((s, c, m) for c, fs in failed.items() for s, m in fs)
        lines.append(f"first counterexample: seed {first[0]} [{first[1]}] {first[2]}")
        lines.append(dump_instance(first[0], max_n))
    lines.append("result: " + ("PASS" if passed else "FAIL"))
    return VerifyReport("\n".join(lines) + "\n", passed, tally, sum(o.found for o in outcomes))
