"""Command-line front end: ``query``, ``bench`` and ``verify``.

Exit status is 0 when a command ran (including "no group found"), 1 when
``verify`` finds a disagreement and 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys

from .bench import ALGORITHMS, DEFAULTS, SWEEP, BenchPlan, run_bench
from .errors import GeoTrussError
from .generate import community_graph
from .io import emit_result, load_graph, load_query, make_query, parse_delta, result_record
from .search import run_search
from .verify import FAULTS, verify

log = logging.getLogger("geotruss")


def _algos(name: str) -> list[str]:
    return list(ALGORITHMS) if name == "all" else [name]


def _run_algo(name, g, q):
    if name == "mkasg":
        return run_search(g, q).result
    return ALGORITHMS[name](g, q)


def cmd_query(args) -> int:
    g = load_graph(args.vertices, args.edges)
    if args.query:
        q = load_query(args.query, g)
    else:
        missing = [f for f in ("lambda_", "keywords", "rho", "c") if getattr(args, f) is None]
        if missing:
            names = ", ".join("--" + m.rstrip("_") for m in missing)
            raise GeoTrussError(f"missing query flags: {names} (or pass --query FILE)")
        q = make_query(g, args.lambda_, args.keywords, args.rho, args.c, args.delta)
    names = _algos(args.algo)
    if len(names) == 1:
        sys.stdout.write(emit_result(_run_algo(names[0], g, q), g, args.format, q))
        return 0
    results = {n: _run_algo(n, g, q) for n in names}
    dists = {None if r is None else r.dist for r in results.values()}
    if args.format == "json":
        doc = {"agree": len(dists) == 1,
               "results": {n: result_record(r, g, q) for n, r in results.items()}}
        sys.stdout.write(json.dumps(doc, separators=(", ", ": ")) + "\n")
    else:
        sys.stdout.write(f"agree\t{str(len(dists) == 1).lower()}\n")
        for n, r in results.items():
            sys.stdout.write(f"# algo {n}\n")
            sys.stdout.write(emit_result(r, g, "tsv", q))
    return 0


def cmd_bench(args) -> int:
    if args.vertices or args.edges:
        if not (args.vertices and args.edges):
            raise GeoTrussError("--vertices and --edges must be given together")
        g = load_graph(args.vertices, args.edges)
    else:
        g = community_graph(random.Random(args.seed), args.n, args.keyword_count,
                            size=(20, 40), p_in=0.5)
    common = dict(algorithms=_algos(args.algo), queries=args.queries, seed=args.seed,
                  delta=parse_delta(args.delta), timing=not args.no_timing)
    if args.vary:
        plan = BenchPlan.sweep([p.strip() for p in args.vary.split(",") if p.strip()], **common)
    else:
        cell = tuple(DEFAULTS[k] if getattr(args, k) is None else getattr(args, k)
                     for k in ("c", "phi", "rho"))
        plan = BenchPlan(cells=[cell], **common)
    log.info("bench on %r, %d cell(s)", g, len(plan.cells))
    table = run_bench(g, plan)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(table)
    else:
        sys.stdout.write(table)
    return 0


def cmd_verify(args) -> int:
    if args.trials < 0:
        raise GeoTrussError("--trials must be >= 0")
    if args.trials == 0:
        log.warning("no trials requested; the pass is vacuous")
    rep = verify(args.trials, args.seed, args.max_n, args.inject_fault,
                 structure=not args.no_structure)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(rep.text)
    else:
        sys.stdout.write(rep.text)
    return 0 if rep.passed else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="geotruss", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("query", help="answer one query on graph files")
    q.add_argument("--vertices", required=True, help="vertex TSV: id, x, y, keyword")
    q.add_argument("--edges", required=True, help="edge TSV: u, v")
    q.add_argument("--query", help="JSON file with lambda, keywords, rho, c, delta")
    q.add_argument("--lambda", dest="lambda_", metavar="X,Y", help="query location")
    q.add_argument("--keywords", help="comma-separated keyword names")
    q.add_argument("--rho", type=int, help="minimum members per keyword")
    q.add_argument("--c", type=int, help="trussness")
    q.add_argument("--delta", default="2", help="radius growth ratio, > 1 (default 2)")
    q.add_argument("--algo", choices=[*ALGORITHMS, "all"], default="mkasg")
    q.add_argument("--seed", type=int, default=0, help="unused by query; accepted for symmetry")
    q.add_argument("--format", choices=("json", "tsv"), default="json")
    q.set_defaults(func=cmd_query)

    b = sub.add_parser("bench", help="time algorithms over a parameter grid")
    b.add_argument("--vertices", help="vertex TSV (default: synthetic graph)")
    b.add_argument("--edges", help="edge TSV")
    b.add_argument("--n", type=int, default=500, help="synthetic graph size")
    b.add_argument("--keyword-count", type=int, default=6, help="synthetic keyword vocabulary")
    b.add_argument("--vary", help=f"comma-separated subset of {','.join(SWEEP)}; "
                                  "sweeps each over its range with the rest at defaults")
    b.add_argument("--c", type=int, help=f"trussness for a single cell (default {DEFAULTS['c']})")
    b.add_argument("--phi", type=int, help=f"query keyword count (default {DEFAULTS['phi']})")
    b.add_argument("--rho", type=int, help=f"members per keyword (default {DEFAULTS['rho']})")
    b.add_argument("--delta", default="2")
    b.add_argument("--queries", type=int, default=5, help="queries per cell")
    b.add_argument("--algo", choices=[*ALGORITHMS, "all"], default="all")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--format", choices=("tsv",), default="tsv")
    b.add_argument("--no-timing", action="store_true",
                   help="leave time columns empty so reports compare byte for byte")
    b.add_argument("--output", help="write the table here instead of stdout")
    b.set_defaults(func=cmd_bench)

    v = sub.add_parser("verify", help="randomised agreement and structure checks")
    v.add_argument("--trials", type=int, default=1000)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--max-n", type=int, default=40)
    v.add_argument("--inject-fault", choices=FAULTS, default="none")
    v.add_argument("--no-structure", action="store_true", help="skip the structure oracles")
    v.add_argument("--output", help="write the report here instead of stdout")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except GeoTrussError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
