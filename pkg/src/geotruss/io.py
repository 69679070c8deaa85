"""Reading graphs and queries from text files, writing results.

Vertex file: one ``id<TAB>x<TAB>y<TAB>keyword`` row per vertex. Edge file: one
``u<TAB>v`` row per edge. Blank lines and lines starting with ``#`` are
ignored in both. External ids are remapped to dense ids in lexicographic
order, so the loaded graph does not depend on row order.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Mapping

from .errors import (DanglingEdge, DuplicateVertex, InvalidParameter, ParseError,
                     UnknownKeyword)
from .graph import GeoSocialGraph, GroupResult, Query

log = logging.getLogger(__name__)


@dataclass
class LoadReport:
    vertices: int = 0
    edges: int = 0
    duplicate_edges: int = 0
    self_loops: int = 0


def _rows(path: Path):
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.rstrip("\r\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            yield lineno, line.split("\t")


def _coord(path, lineno, text, name):
    try:
        x = float(text)
    except ValueError:
        raise ParseError(path, lineno, f"{name} is not a number: {text!r}") from None
    if not math.isfinite(x):
        raise ParseError(path, lineno, f"{name} is not finite: {text!r}")
    return x


def read_graph(vertex_path, edge_path) -> tuple[GeoSocialGraph, LoadReport]:
    """Load a graph and report what was dropped on the way."""
    vertex_path, edge_path = Path(vertex_path), Path(edge_path)
    rows = {}
    for lineno, f in _rows(vertex_path):
        if len(f) != 4:
            raise ParseError(vertex_path, lineno, f"expected 4 tab-separated fields, got {len(f)}")
        vid, xs, ys, kw = (s.strip() for s in f)
        if not vid:
            raise ParseError(vertex_path, lineno, "empty vertex id")
        if not kw or any(ch in kw for ch in ", ;"):
            raise ParseError(vertex_path, lineno, f"expected exactly one keyword, got {kw!r}")
        if vid in rows:
            raise DuplicateVertex(vid)
        rows[vid] = (_coord(vertex_path, lineno, xs, "x"), _coord(vertex_path, lineno, ys, "y"), kw)

    labels = sorted(rows)
    index = {lab: i for i, lab in enumerate(labels)}
    names = sorted({r[2] for r in rows.values()})
    kw_index = {k: i for i, k in enumerate(names)}

    rep = LoadReport(vertices=len(labels))
    seen = set()
    for lineno, f in _rows(edge_path):
        if len(f) != 2:
            raise ParseError(edge_path, lineno, f"expected 2 tab-separated fields, got {len(f)}")
        a, b = f[0].strip(), f[1].strip()
        for x in (a, b):
            if x not in index:
                raise DanglingEdge(x, lineno)
        u, v = index[a], index[b]
        if u == v:
            rep.self_loops += 1
            continue
        e = (u, v) if u < v else (v, u)
        if e in seen:
            rep.duplicate_edges += 1
            continue
        seen.add(e)
    rep.edges = len(seen)
    if rep.self_loops:
        log.warning("dropped %d self-loop(s) from %s", rep.self_loops, edge_path)
    if rep.duplicate_edges:
        log.warning("dropped %d duplicate edge(s) from %s", rep.duplicate_edges, edge_path)
    log.info("loaded %d vertices and %d edges", rep.vertices, rep.edges)

    g = GeoSocialGraph.from_edges(
        len(labels), sorted(seen),
        [rows[lab][0] for lab in labels],
        [rows[lab][1] for lab in labels],
        [kw_index[rows[lab][2]] for lab in labels],
        labels, names,
    )
    return g, rep


def load_graph(vertex_path, edge_path) -> GeoSocialGraph:
    return read_graph(vertex_path, edge_path)[0]


def write_graph(g: GeoSocialGraph, vertex_path, edge_path) -> None:
    """Write ``g`` in the format ``load_graph`` reads."""
    with open(vertex_path, "w", encoding="utf-8") as fh:
        for v in range(g.n):
            fh.write(f"{g.labels[v]}\t{float(g.xs[v])!r}\t{float(g.ys[v])!r}\t"
                     f"{g.keyword_names[g.keywords[v]]}\n")
    with open(edge_path, "w", encoding="utf-8") as fh:
        for u, v in g.edges():
            fh.write(f"{g.labels[u]}\t{g.labels[v]}\n")


# -- queries -----------------------------------------------------------------

def parse_delta(value) -> Fraction:
    """Exact ratio from an int, a decimal string or a ``p/q`` string."""
    try:
        if isinstance(value, float):
            return Fraction(str(value))
        return Fraction(str(value).strip()) if isinstance(value, str) else Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError):
        raise InvalidParameter("delta", value, "not a number") from None


def parse_location(value) -> tuple[float, float]:
    if isinstance(value, str):
        parts = value.split(",")
    else:
        parts = list(value)
    if len(parts) != 2:
        raise InvalidParameter("lambda", value, "expected X,Y")
    try:
        x, y = float(parts[0]), float(parts[1])
    except (TypeError, ValueError):
        raise InvalidParameter("lambda", value, "coordinates must be numbers") from None
    if not (math.isfinite(x) and math.isfinite(y)):
        raise InvalidParameter("lambda", value, "coordinates must be finite")
    return x, y


def _int(name, value) -> int:
    try:
        f = float(value)
    except (TypeError, ValueError):
        raise InvalidParameter(name, value, "not an integer") from None
    if not f.is_integer():
        raise InvalidParameter(name, value, "not an integer")
    return int(f)


def make_query(g: GeoSocialGraph, location, keywords, rho, c, delta=2) -> Query:
    """Validated query with keyword names interned against ``g``."""
    if isinstance(keywords, str):
        keywords = [k for k in keywords.split(",")]
    names = [str(k).strip() for k in keywords]
    if not names or any(not k for k in names):
        raise InvalidParameter("keywords", keywords, "expected a non-empty list of names")
    ids = []
    for k in names:
        if k not in g.keyword_index:
            raise UnknownKeyword(k)
        ids.append(g.keyword_index[k])
    return Query(parse_location(location), tuple(ids), _int("rho", rho), _int("c", c),
                 parse_delta(delta))


def load_query(source, g: GeoSocialGraph) -> Query:
    """Query from a mapping or a JSON file holding one.

    Keys: ``lambda`` (``[x, y]`` or ``"x,y"``), ``keywords``, ``rho``, ``c``
    and optionally ``delta`` (default 2).
    """
    if not isinstance(source, Mapping):
        path = Path(source)
        try:
            source = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ParseError(path, exc.lineno, exc.msg) from None
        if not isinstance(source, Mapping):
            raise ParseError(path, 1, "expected a JSON object")
    for key in ("lambda", "keywords", "rho", "c"):
        if key not in source:
            raise InvalidParameter(key, None, "missing")
    return make_query(g, source["lambda"], source["keywords"], source["rho"], source["c"],
                      source.get("delta", 2))


# -- results -----------------------------------------------------------------

def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (list, tuple)):
        return [_jsonable(y) for y in x]
    if isinstance(x, float) and not math.isfinite(x):
        return str(x)
    return x


def result_record(r: GroupResult | None, g: GeoSocialGraph, q: Query | None = None) -> dict:
    """Plain-dict form of a result; the same layout backs both output formats."""
    if r is None:
        return {"found": False}
    labels = g.labels
    rec = {
        "found": True,
        "dist": r.dist,
        "vertices": sorted(labels[v] for v in r.vertices),
        "edges": sorted(sorted((labels[u], labels[v])) for u, v in r.edges),
    }
    if q is not None:
        counts = {g.keyword_names[k]: 0 for k in q.keywords}
        for v in r.vertices:
            name = g.keyword_names[g.keywords[v]]
            if name in counts:
                counts[name] += 1
        rec["keyword_counts"] = counts
    rec["stats"] = {k: _jsonable(r.stats[k]) for k in sorted(r.stats)}
    return rec


def emit_result(r: GroupResult | None, g: GeoSocialGraph, fmt: str = "json",
                q: Query | None = None) -> str:
    """Serialise a result deterministically as JSON or TSV.

    ``None`` (no group exists) is written as an explicit not-found record.
    """
    rec = result_record(r, g, q)
    if fmt == "json":
        return json.dumps(rec, separators=(", ", ": ")) + "\n"
    if fmt != "tsv":
        raise InvalidParameter("format", fmt, "expected json or tsv")
    lines = [f"found\t{str(rec['found']).lower()}"]
    if rec["found"]:
        lines.append(f"dist\t{rec['dist']!r}")
        lines.append("vertices\t" + ",".join(rec["vertices"]))
        lines.append("edges\t" + ",".join(f"{a}-{b}" for a, b in rec["edges"]))
        for k, n in rec.get("keyword_counts", {}).items():
            lines.append(f"count.{k}\t{n}")
        for k, v in rec["stats"].items():
            if isinstance(v, list):
                v = ",".join(json.dumps(x) for x in v)
            elif isinstance(v, bool) or v is None:
                v = json.dumps(v)
            lines.append(f"stat.{k}\t{v}")
    return "\n".join(lines) + "\n"
