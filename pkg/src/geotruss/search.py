"""End-to-end query: prune to maximal (rho, c)-trusses, expand, reduce."""

from __future__ import annotations

from dataclasses import dataclass, field

from .expand import ExpansionOutcome, run_expanding
from .graph import GeoSocialGraph, GroupResult, Query, validate_group
from .reduce import run_reducing
from .spatial import build_sorted_edges
from .truss import maximal_rhoc_truss


@dataclass
class SearchReport:
    result: GroupResult | None
    stats: dict = field(default_factory=dict)
    expansion: ExpansionOutcome | None = None


def run_search(g: GeoSocialGraph, q: Query, *, literal_tp: bool = False,
               cascade: bool = True) -> SearchReport:
    """Answer ``q`` on ``g`` and keep the stage instrumentation.

    ``literal_tp`` and ``cascade`` switch on deliberately weaker variants
    used by the verification suite; leave them at their defaults otherwise.
    """
    q.check_against(g)
    sq = g.sq_distances(q.location)
    H = maximal_rhoc_truss(g, q)
    stats = {
        "g_vertices": g.n,
        "g_edges": g.m,
        "h_components": len(H),
        "h_vertices": sum(len(t.vertices) for t in H),
        "h_edges": sum(len(t.edges) for t in H),
    }
    if not H:
        return SearchReport(None, stats)
    a = build_sorted_edges(H, sq)
    outcome = run_expanding(H, a, g, q, literal_tp=literal_tp)
    stats.update(outcome.stats)
    if outcome.candidate is None:
        return SearchReport(None, stats, outcome)
    result = run_reducing(outcome.candidate, g, q, sq, cascade=cascade, check=cascade)
    stats.update(result.stats)
    result.stats = stats
    if cascade and not validate_group(result, q, g):
        raise AssertionError("search returned a group that fails validation")
    return SearchReport(result, stats, outcome)


def search(g: GeoSocialGraph, q: Query) -> GroupResult | None:
    """The closest group satisfying ``q``, or None when no group exists."""
    return run_search(g, q).result
