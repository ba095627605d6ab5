from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import Deque, Dict, List, NamedTuple, Optional, Tuple

from .._constants import LOGGER_NAME
from ..dbm import LUBounds, Zone, extrapolate_lu_plus, format_zone, intersect_guard, reset, up
from ..ta_model import TBA, Transition, compute_lu_bounds

logger = logging.getLogger(LOGGER_NAME)


@dataclass(frozen=True)
class Node:
    """Zone graph node ``(q, Z)`` with ``Z`` canonical, non-empty and stable under extrapolation."""

    q: str
    z: Zone

    def describe(self, clocks: Tuple[str, ...]) -> str:
        return f"({self.q}, {format_zone(self.z, clocks)})"


class Edge(NamedTuple):
    """One non-empty successor: the transition's position, the target node and the exact zone."""

    index: int
    transition: Transition
    node: Node
    exact: Zone


def initial_zone(dim: int) -> Zone:
    """Delay closure of the zero valuation: all clocks equal and non-negative."""
    return up(Zone.zero(dim))


def initial_node(a: TBA, lu: Optional[LUBounds] = None) -> Node:
    lu = lu if lu is not None else compute_lu_bounds(a)
    return Node(a.initial, extrapolate_lu_plus(initial_zone(a.dim), lu))


def post_zone(z: Zone, t: Transition) -> Zone:
    """Exact successor ``reset_R(up(Z) & g)``; the empty marker when the guard cannot be met."""
    return reset(intersect_guard(up(z), t.guard), t.resets)


def post(nd: Node, t: Transition, lu: LUBounds) -> Optional[Node]:
    """Abstract successor of ``nd`` through ``t``, or ``None`` when it is empty."""
    if t.src != nd.q:
        raise ValueError(f"transition leaves {t.src!r}, not {nd.q!r}")
    z = post_zone(nd.z, t)
    if z.is_empty_marker:
        return None
    return Node(t.dst, extrapolate_lu_plus(z, lu))


def successors(nd: Node, a: TBA, lu: Optional[LUBounds] = None) -> List[Tuple[Transition, Node]]:
    """All non-empty successors in the automaton's transition order."""
    lu = lu if lu is not None else compute_lu_bounds(a)
    result: List[Tuple[Transition, Node]] = []
    for t in a.outgoing(nd.q):
        succ = post(nd, t, lu)
        if succ is not None:
            result.append((t, succ))
    return result


class ZoneGraph:
    """Abstract zone graph of an automaton under Extra+ with global LU bounds.

    State invariants are folded into guards before exploring. Transitions are identified by their
    position in :attr:`automaton`'s transition tuple.
    """

    def __init__(self, a: TBA) -> None:
        self.automaton = a.compiled()
        self.lu = compute_lu_bounds(self.automaton)
        self._indexed: Dict[str, List[Tuple[int, Transition]]] = {q: [] for q in self.automaton.states}
        for i, t in enumerate(self.automaton.transitions):
            self._indexed[t.src].append((i, t))

    @property
    def clocks(self) -> Tuple[str, ...]:
        return self.automaton.clocks

    def initial(self) -> Node:
        return initial_node(self.automaton, self.lu)

    def is_accepting(self, nd: Node) -> bool:
        return self.automaton.is_accepting(nd.q)

    def edges(self, nd: Node) -> List[Edge]:
        result: List[Edge] = []
        for i, t in self._indexed[nd.q]:
            z = post_zone(nd.z, t)
            if z.is_empty_marker:
                continue
            result.append(Edge(i, t, Node(t.dst, extrapolate_lu_plus(z, self.lu)), z))
        return result

    def successors(self, nd: Node) -> List[Tuple[Transition, Node]]:
        return [(e.transition, e.node) for e in self.edges(nd)]

    def reachable(self, limit: Optional[int] = None) -> List[Node]:
        """Breadth-first enumeration of the reachable nodes, stopping after ``limit`` nodes if given."""
        start = self.initial()
        order = [start]
        seen = {start}
        queue: Deque[Node] = deque([start])
        while queue and (limit is None or len(order) < limit):
            nd = queue.popleft()
            for e in self.edges(nd):
                if e.node not in seen:
                    seen.add(e.node)
                    order.append(e.node)
                    queue.append(e.node)
        logger.debug("zone graph of %s: %d reachable nodes", self.automaton.name, len(order))
        return order
