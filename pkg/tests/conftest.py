import itertools

import pytest

from geotruss.graph import GeoSocialGraph


def k(n, kw="k1", spacing=1.0, prefix="v"):
    """Complete graph on ``n`` labelled vertices along the x axis."""
    verts = [(f"{prefix}{i}", spacing * (i + 1), 0.0, kw if isinstance(kw, str) else kw[i])
             for i in range(n)]
    edges = list(itertools.combinations([v[0] for v in verts], 2))
    return verts, edges


def quest_graph() -> GeoSocialGraph:
    """Small quest scenario, coordinates chosen so distances to the origin are exact.

    ``d, e, g, h, i`` form a K5 and ``f`` hangs off ``e, h, i``. Keywords:
    ``d, e`` carry k1, ``g, i`` carry k2, ``h, f`` carry k3. A tight K4 on
    ``a, b, c, j`` sits closer to the origin but only carries k1 and k2.
    """
    verts = [
        ("a", 0.3, 0.4, "k1"),   # 0.5
        ("b", 0.0, 0.6, "k2"),   # 0.6
        ("c", 0.7, 0.0, "k1"),   # 0.7
        ("j", 0.0, 0.8, "k2"),   # 0.8
        ("d", 1.0, 0.0, "k1"),   # 1.0
        ("g", 0.0, 1.2, "k2"),   # 1.2
        ("h", 0.9, 1.2, "k3"),   # 1.5
        ("i", 0.0, 2.0, "k2"),   # 2.0
        ("e", 1.5, 2.0, "k1"),   # 2.5
        ("f", 1.8, 2.4, "k3"),   # 3.0
    ]
    edges = list(itertools.combinations("abcj", 2))
    edges += list(itertools.combinations("degih", 2))
    edges += [("f", "e"), ("f", "h"), ("f", "i")]
    return GeoSocialGraph.from_records(verts, edges)


@pytest.fixture
def quest():
    return quest_graph()


def labels(g, vs):
    return sorted(g.labels[v] for v in vs)


# acceptance verdicts, echoed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
