"""Emptiness check for weak Büchi automata over the abstract zone graph.

The search keeps the current path (Cyan) on an explicit stack and remembers fully explored nodes
(Blue) per state. A successor whose zone is covered by a Blue zone of the same state is skipped.
An accepting successor closes a cycle when a Cyan node of the same state has a smaller zone; in
``idfss`` mode a path that does not close that way is handed to the iterability check.
"""

from __future__ import annotations

import hashlib
import logging
import random
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .._constants import LOGGER_NAME
from ..dbm import Zone, includes, intersect
from ..omega_iter import audit_witness, omega_iterable
from ..ta_model import TBA, Transition
from ..zone_graph import Edge, Node, ZoneGraph
from . import metrics
from ._config import CyanEntry, IterableCheck, SearchConfig, SearchMode, SearchResult, WitnessZone

logger = logging.getLogger(LOGGER_NAME)


class WitnessAuditError(AssertionError):
    """An iterability witness did not survive replay without abstraction."""


@dataclass(frozen=True)
class Witness:
    """Closed cycle: how it closed and the transition indices from the Cyan node back to its state."""

    kind: str
    path: Tuple[int, ...]


@dataclass
class SearchStats:
    visited: int = 0
    subsumptions: int = 0
    iter_checks: int = 0
    result: SearchResult = SearchResult.EMPTY
    max_depth: int = 0
    elapsed: float = 0.0
    witness: Optional[Witness] = None


@dataclass
class _Frame:
    node: Node
    edges: List[Edge]
    via: Optional[Edge]
    pos: int = 0


def shuffled(edges: List[Edge], node: Node, seed: int) -> List[Edge]:
    """Successor order of ``node``: a shuffle seeded by ``seed`` and a digest of the node."""
    digest = hashlib.blake2b(f"{seed}|{node.q}|{node.z.m}".encode(), digest_size=8).digest()
    order = list(edges)
    random.Random(int.from_bytes(digest, "big")).shuffle(order)
    return order


@dataclass
class _Search:
    graph: ZoneGraph
    cfg: SearchConfig
    stats: SearchStats = field(default_factory=SearchStats)
    stack: List[_Frame] = field(default_factory=list)
    cyan: Dict[str, List[int]] = field(default_factory=dict)
    blue: Dict[str, List[Zone]] = field(default_factory=dict)

    def push(self, node: Node, via: Optional[Edge]) -> None:
        edges = shuffled(self.graph.edges(node), node, self.cfg.seed)
        self.cyan.setdefault(node.q, []).append(len(self.stack))
        self.stack.append(_Frame(node, edges, via))
        self.stats.visited += 1
        self.stats.max_depth = max(self.stats.max_depth, len(self.stack))

    def pop(self) -> None:
        frame = self.stack.pop()
        self.cyan[frame.node.q].pop()
        self.blue.setdefault(frame.node.q, []).append(frame.node.z)

    def path_from(self, position: int, last: Edge) -> List[Edge]:
        return [frame.via for frame in self.stack[position + 1 :] if frame.via is not None] + [last]

    def close(self, kind: str, position: int, last: Edge) -> SearchResult:
        path = tuple(e.index for e in self.path_from(position, last))
        self.stats.witness = Witness(kind, path)
        logger.debug("%s closes a cycle of length %d at %s", kind, len(path), last.node.q)
        return SearchResult.CYCLE_FOUND

    def iterable(self, sigma: Sequence[Transition], edge: Edge) -> bool:
        self.stats.iter_checks += 1
        result = omega_iterable(sigma, self.graph.automaton.dim - 1)
        if not result.iterable or result.zone is None:
            return False
        start = result.zone
        if self.cfg.iterable_check is IterableCheck.FROM_ZONE:
            reached = edge.node.z if self.cfg.witness_zone is WitnessZone.ABSTRACTED else edge.exact
            start = intersect(reached, result.zone)
            if start.is_empty_marker:
                return False
        if self.cfg.audit_witness:
            rounds = result.active_clocks**2 + 1
            if not audit_witness(sigma, start, rounds):
                raise WitnessAuditError(f"iterability witness of length {len(sigma)} blocks within {rounds} rounds")
        return True

    def successor(self, edge: Edge) -> Optional[SearchResult]:
        """Handle one successor; a result is returned only when a cycle closes."""
        target = edge.node
        positions = self.cyan.get(target.q, [])
        if not self.graph.is_accepting(target):
            if any(self.stack[i].node.z == target.z for i in positions):
                return None
        else:
            for i in positions:
                if includes(target.z, self.stack[i].node.z):
                    return self.close("cyan-inclusion", i, edge)
            if self.cfg.mode is SearchMode.IDFSS and positions:
                i = positions[-1] if self.cfg.cyan_entry is CyanEntry.DEEPEST else positions[0]
                sigma = [e.transition for e in self.path_from(i, edge)]
                if self.iterable(sigma, edge):
                    return self.close("iterability", i, edge)
        if any(includes(z, target.z) for z in self.blue.get(target.q, ())):
            self.stats.subsumptions += 1
            return None
        self.push(target, edge)
        return None

    def run(self) -> SearchResult:
        self.push(self.graph.initial(), None)
        while self.stack:
            frame = self.stack[-1]
            if frame.pos == len(frame.edges):
                self.pop()
                continue
            edge = frame.edges[frame.pos]
            frame.pos += 1
            result = self.successor(edge)
            if result is not None:
                return result
        return SearchResult.EMPTY


def check(a: TBA, cfg: Optional[SearchConfig] = None) -> Tuple[SearchResult, SearchStats]:
    """Search ``a`` for an accepting cycle.

    ``a`` is expected to be weak: every cycle is entirely accepting or entirely non-accepting.
    """
    cfg = cfg if cfg is not None else SearchConfig()
    search = _Search(ZoneGraph(a), cfg)
    started = time.perf_counter()
    result = search.run()
    stats = search.stats
    stats.result = result
    stats.elapsed = time.perf_counter() - started

    mode = cfg.mode.value
    metrics.visited_nodes_total.labels(mode=mode).inc(stats.visited)
    metrics.subsumption_skips_total.labels(mode=mode).inc(stats.subsumptions)
    metrics.iterability_checks_total.inc(stats.iter_checks)
    metrics.searches_total.labels(mode=mode, result=result.value).inc()
    metrics.search_duration.labels(mode=mode).observe(stats.elapsed)
    logger.info(
        "%s on %s: %s after %d nodes, %d subsumptions, %d iterability checks",
        mode,
        a.name,
        result.value,
        stats.visited,
        stats.subsumptions,
        stats.iter_checks,
    )
    return result, stats
