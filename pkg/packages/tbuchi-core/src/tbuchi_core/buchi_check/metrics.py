from prometheus_client import Counter, Histogram

from ..omega_iter import graph_compositions_total

visited_nodes_total = Counter("tbuchi_visited_nodes_total", "Zone graph nodes entered by the search", ["mode"])
subsumption_skips_total = Counter(
    "tbuchi_subsumption_skips_total", "Successors skipped because a fully explored zone covers them", ["mode"]
)
iterability_checks_total = Counter("tbuchi_iterability_checks_total", "Iterability checks run by the search")
searches_total = Counter("tbuchi_searches_total", "Finished searches", ["mode", "result"])
search_duration = Histogram("tbuchi_search_duration_seconds", "Search duration", ["mode"])

__all__ = [
    "graph_compositions_total",
    "iterability_checks_total",
    "search_duration",
    "searches_total",
    "subsumption_skips_total",
    "visited_nodes_total",
]
