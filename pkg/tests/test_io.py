import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from geotruss.errors import (DanglingEdge, DuplicateVertex, InvalidParameter, ParseError,
                             UnknownKeyword)
from geotruss.generate import random_graph
from geotruss.graph import GroupResult
from geotruss.io import (emit_result, load_graph, load_query, make_query, read_graph,
                         write_graph)


def _write(tmp_path, vrows, erows):
    vp, ep = tmp_path / "v.tsv", tmp_path / "e.tsv"
    vp.write_text("".join("\t".join(map(str, r)) + "\n" for r in vrows))
    ep.write_text("".join("\t".join(r) + "\n" for r in erows))
    return vp, ep


K4_V = [("a", 0, 0, "k1"), ("b", 1, 0, "k1"), ("c", 0, 1, "k2"), ("d", 1, 1, "k2")]
K4_E = [("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "d")]


def test_load_k4(tmp_path):
    g = load_graph(*_write(tmp_path, K4_V, K4_E))
    assert (g.n, g.m) == (4, 6)


def test_dangling_edge(tmp_path):
    with pytest.raises(DanglingEdge) as exc:
        load_graph(*_write(tmp_path, K4_V, K4_E + [("a", "z")]))
    assert exc.value.external_id == "z"


def test_duplicate_edges_and_self_loops_counted(tmp_path, caplog):
    g, rep = read_graph(*_write(tmp_path, K4_V, K4_E + [("b", "a"), ("c", "c")]))
    assert g.m == 6
    assert rep.duplicate_edges == 1 and rep.self_loops == 1
    assert "duplicate" in caplog.text and "self-loop" in caplog.text


def test_duplicate_vertex(tmp_path):
    with pytest.raises(DuplicateVertex):
        load_graph(*_write(tmp_path, K4_V + [("a", 5, 5, "k1")], K4_E))


@pytest.mark.parametrize("row,reason", [
    (("x", "oops", 0, "k1"), "not a number"),
    (("x", 0, 0, "k1,k2"), "exactly one keyword"),
    (("x", 0, 0), "expected 4"),
])
def test_parse_errors(tmp_path, row, reason):
    with pytest.raises(ParseError) as exc:
        load_graph(*_write(tmp_path, K4_V + [row], K4_E))
    assert exc.value.line == 5
    assert reason in str(exc.value)


def test_comments_and_blank_lines(tmp_path):
    vp, ep = _write(tmp_path, K4_V, K4_E)
    vp.write_text("# header\n\n" + vp.read_text())
    ep.write_text("# edges\n" + ep.read_text() + "\n")
    assert load_graph(vp, ep).m == 6


def test_loading_is_order_insensitive(tmp_path):
    rng = random.Random(3)
    g = random_graph(rng, 25, 0.3, 4)
    vp, ep = tmp_path / "v.tsv", tmp_path / "e.tsv"
    write_graph(g, vp, ep)
    a = load_graph(vp, ep)
    lines = vp.read_text().splitlines()
    rng.shuffle(lines)
    vp.write_text("\n".join(lines) + "\n")
    lines = ep.read_text().splitlines()
    rng.shuffle(lines)
    ep.write_text("\n".join("\t".join(reversed(l.split("\t"))) for l in lines) + "\n")
    b = load_graph(vp, ep)
    assert a.adj == b.adj and a.labels == b.labels and a.keywords == b.keywords
    assert list(a.xs) == list(b.xs) and list(a.ys) == list(b.ys)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_write_load_round_trip(tmp_path_factory, seed):
    g = random_graph(random.Random(seed), 12, 0.4, 3)
    d = tmp_path_factory.mktemp("rt")
    write_graph(g, d / "v.tsv", d / "e.tsv")
    h = load_graph(d / "v.tsv", d / "e.tsv")
    assert h.labels == g.labels and h.adj == g.adj
    assert [h.keyword_names[x] for x in h.keywords] == [g.keyword_names[x] for x in g.keywords]
    assert list(h.xs) == list(g.xs) and list(h.ys) == list(g.ys)


def test_make_query_example_parameters(tmp_path):
    g = load_graph(*_write(tmp_path, K4_V + [("e", 2, 2, "k3")], K4_E))
    q = make_query(g, "0,0", "k1,k2,k3", 2, 4)
    assert (q.rho, q.c, q.location) == (2, 4, (0.0, 0.0))
    assert [g.keyword_names[x] for x in q.keywords] == ["k1", "k2", "k3"]
    with pytest.raises(InvalidParameter):
        make_query(g, "0,0", "k1", 0, 4)
    with pytest.raises(InvalidParameter):
        make_query(g, "0,0", "k1", 1, 4, delta=1)
    with pytest.raises(InvalidParameter):
        make_query(g, "0,0", "k1", 1, 4, delta="abc")
    with pytest.raises(UnknownKeyword):
        make_query(g, "0,0", "k9", 1, 4)


def test_load_query_from_json(tmp_path):
    g = load_graph(*_write(tmp_path, K4_V, K4_E))
    p = tmp_path / "q.json"
    p.write_text(json.dumps({"lambda": [1, 2], "keywords": ["k2"], "rho": 1, "c": 3,
                             "delta": "5/4"}))
    q = load_query(p, g)
    assert q.location == (1.0, 2.0) and q.delta == pytest.approx(1.25)
    p.write_text("{not json")
    with pytest.raises(ParseError):
        load_query(p, g)


def test_emit_none_and_determinism(tmp_path):
    g = load_graph(*_write(tmp_path, K4_V, K4_E))
    assert emit_result(None, g) == '{"found": false}\n'
    assert emit_result(None, g, "tsv") == "found\tfalse\n"
    r = GroupResult.build(g, (0, 0), [3, 1, 0, 2], [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
                          {"b": 2, "a": [1.5, 2.0]})
    out = emit_result(r, g)
    assert out == emit_result(r, g)
    doc = json.loads(out)
    assert doc["found"] is True
    assert doc["vertices"] == ["a", "b", "c", "d"]
    assert list(doc["stats"]) == ["a", "b"]
    assert list(doc)[:4] == ["found", "dist", "vertices", "edges"]


def test_emit_singleton_sorted(tmp_path):
    g = load_graph(*_write(tmp_path, K4_V, K4_E))
    r = GroupResult((2,), (), 1.0, {})
    assert json.loads(emit_result(r, g))["vertices"] == ["c"]
