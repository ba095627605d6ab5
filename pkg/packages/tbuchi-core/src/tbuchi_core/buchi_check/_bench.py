from __future__ import annotations

import concurrent.futures
import csv
import io
import logging
import statistics
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .._constants import LOGGER_NAME
from ..ta_model import (
    TBA,
    Network,
    gen_csma,
    gen_fddi,
    gen_fischer,
    gen_property,
    gen_train_gate,
    product,
    scale_constants,
)
from ._config import BenchConfig, SearchConfig, SearchMode
from ._search import check

logger = logging.getLogger(LOGGER_NAME)

CSV_COLUMNS = ("model", "N", "mode", "seed", "visited", "subsumptions", "iter_checks", "result")


def build_network(cfg: BenchConfig) -> Network:
    """Network of the family named by ``cfg``, before any property or scaling."""
    if cfg.family in ("csma", "csma-collision"):
        return gen_csma(cfg.n, fixed=cfg.fixed, nonzeno=cfg.nonzeno)
    if cfg.family == "fischer":
        return gen_fischer(cfg.n)
    if cfg.family == "fddi":
        return gen_fddi(cfg.n)
    if cfg.family == "traingate":
        return gen_train_gate(cfg.n)
    raise ValueError(f"unknown model family {cfg.family!r}")


def build_model(cfg: BenchConfig) -> TBA:
    """Product of the family's network with its property, constants scaled down by ``cfg.scale``."""
    prop = gen_property(cfg.property_family or cfg.family, cfg.n)
    return scale_constants(product(build_network(cfg), prop), cfg.scale)


@lru_cache(maxsize=8)
def _cached_model(payload: str) -> TBA:
    return build_model(BenchConfig.model_validate_json(payload))


@dataclass(frozen=True)
class BenchRow:
    model: str
    n: Optional[int]
    mode: SearchMode
    seed: int
    visited: int
    subsumptions: int
    iter_checks: int
    result: str

    def as_csv(self) -> Tuple[object, ...]:
        return (
            self.model,
            "" if self.n is None else self.n,
            self.mode.value,
            self.seed,
            self.visited,
            self.subsumptions,
            self.iter_checks,
            self.result,
        )


@dataclass(frozen=True)
class Aggregate:
    mean: float
    minimum: int
    maximum: int
    median: float


def _aggregate(values: Sequence[int]) -> Aggregate:
    return Aggregate(statistics.fmean(values), min(values), max(values), statistics.median(values))


@dataclass(frozen=True)
class BenchTable:
    rows: Tuple[BenchRow, ...]

    def for_mode(self, mode: SearchMode) -> List[BenchRow]:
        return [row for row in self.rows if row.mode is mode]

    def visited(self, mode: SearchMode) -> Aggregate:
        return _aggregate([row.visited for row in self.for_mode(mode)])

    def iter_checks(self, mode: SearchMode) -> Aggregate:
        return _aggregate([row.iter_checks for row in self.for_mode(mode)])

    def aggregates(self) -> Dict[SearchMode, Dict[str, Aggregate]]:
        modes = [mode for mode in SearchMode if self.for_mode(mode)]
        return {mode: {"visited": self.visited(mode), "iter_checks": self.iter_checks(mode)} for mode in modes}

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in self.rows:
            writer.writerow(row.as_csv())
        return out.getvalue()


def _run_one(payload: str, mode: SearchMode, seed: int) -> BenchRow:
    cfg = BenchConfig.model_validate_json(payload)
    result, stats = check(_cached_model(payload), SearchConfig(seed=seed, mode=mode))
    return BenchRow(cfg.family, cfg.n, mode, seed, stats.visited, stats.subsumptions, stats.iter_checks, result.value)


def run_bench(cfg: BenchConfig) -> BenchTable:
    """Run both search modes on every seed; rows come ordered by seed, then mode."""
    payload = cfg.model_dump_json()
    tasks = [(mode, cfg.first_seed + i) for i in range(cfg.seeds) for mode in SearchMode]
    if cfg.workers == 1:
        rows = [_run_one(payload, mode, seed) for mode, seed in tasks]
    else:
        with concurrent.futures.ProcessPoolExecutor(max_workers=cfg.workers) as executor:
            futures = [executor.submit(_run_one, payload, mode, seed) for mode, seed in tasks]
            rows = [future.result() for future in futures]
    table = BenchTable(tuple(rows))
    for mode, agg in table.aggregates().items():
        logger.info(
            "%s %d %s: visited mean %.1f median %.1f, iterability checks mean %.1f",
            cfg.family,
            cfg.n,
            mode.value,
            agg["visited"].mean,
            agg["visited"].median,
            agg["iter_checks"].mean,
        )
    return table
