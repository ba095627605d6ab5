from ._bench import CSV_COLUMNS, Aggregate, BenchRow, BenchTable, build_model, build_network, run_bench
from ._config import BenchConfig, CyanEntry, IterableCheck, SearchConfig, SearchMode, SearchResult, WitnessZone
from ._search import SearchStats, Witness, WitnessAuditError, check, shuffled

__all__ = [
    "Aggregate",
    "BenchConfig",
    "BenchRow",
    "BenchTable",
    "CSV_COLUMNS",
    "CyanEntry",
    "IterableCheck",
    "SearchConfig",
    "SearchMode",
    "SearchResult",
    "SearchStats",
    "Witness",
    "WitnessAuditError",
    "WitnessZone",
    "build_model",
    "build_network",
    "check",
    "run_bench",
    "shuffled",
]
