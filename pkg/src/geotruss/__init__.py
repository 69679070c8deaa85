"""Geo-social group search over attributed graphs.

Find the connected c-truss that holds at least ``rho`` members for each query
keyword and whose farthest member is as close as possible to a query point.
"""

from .baselines import (BaselineKind, brute_force_optimum, run_binary_search,
                        run_decremental, run_incremental)
from .errors import (DanglingEdge, DoubleInsert, DuplicateVertex, EdgeAbsent, EmptyGroup,
                     GeoTrussError, InstanceTooLarge, InvalidCandidate, InvalidParameter,
                     NonMonotoneRadius, NotInserted, ParseError, UnknownKeyword, VertexAbsent)
from .graph import (GeoSocialGraph, GroupResult, Query, distance, group_distance,
                    keyword_counts, validate_group)
from .search import SearchReport, run_search, search

__version__ = "0.1.0"

__all__ = [
    "BaselineKind", "GeoSocialGraph", "GroupResult", "Query", "SearchReport",
    "brute_force_optimum", "distance", "group_distance", "keyword_counts",
    "run_binary_search", "run_decremental", "run_incremental", "run_search",
    "search", "validate_group",
    "DanglingEdge", "DoubleInsert", "DuplicateVertex", "EdgeAbsent", "EmptyGroup",
    "GeoTrussError", "InstanceTooLarge", "InvalidCandidate", "InvalidParameter",
    "NonMonotoneRadius", "NotInserted", "ParseError", "UnknownKeyword", "VertexAbsent",
]
