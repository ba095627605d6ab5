from ._buchi import RegionNode, oracle_buchi_nonempty, region_graph, region_successors
from ._regions import (
    REGION_LIMIT,
    OracleLimitError,
    Region,
    all_regions,
    clock_count,
    iterable_regions,
    max_constant,
    oracle_executable,
    oracle_iterable_from,
    oracle_omega_iterable,
    region_count_bound,
    region_of,
    region_post,
    simulate,
    zone_iteration_omega_iterable,
)

__all__ = [
    "OracleLimitError",
    "REGION_LIMIT",
    "Region",
    "RegionNode",
    "all_regions",
    "clock_count",
    "iterable_regions",
    "max_constant",
    "oracle_buchi_nonempty",
    "oracle_executable",
    "oracle_iterable_from",
    "oracle_omega_iterable",
    "region_count_bound",
    "region_graph",
    "region_of",
    "region_post",
    "region_successors",
    "simulate",
    "zone_iteration_omega_iterable",
]
