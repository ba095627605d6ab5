from __future__ import annotations

import logging
from collections import deque
from typing import Deque, Dict, List, Set, Tuple

from .._constants import LOGGER_NAME
from ..ta_model import TBA
from ._regions import Region, _check_limit, max_constant, region_of

logger = logging.getLogger(LOGGER_NAME)

RegionNode = Tuple[str, Region]


def region_successors(a: TBA, node: RegionNode) -> List[RegionNode]:
    """Time-abstract successors: any delay, then one transition of the compiled automaton."""
    q, r = node
    result: List[RegionNode] = []
    for delayed in r.delays():
        for t in a.outgoing(q):
            if delayed.satisfies_guard(t.guard):
                result.append((t.dst, delayed.reset(t.resets)))
    return result


def region_graph(a: TBA) -> Dict[RegionNode, List[RegionNode]]:
    """Reachable part of the region graph of ``a`` with invariants folded into guards."""
    a = a.compiled()
    bound = max_constant(a.transitions)
    _check_limit(len(a.clocks), bound)
    start: RegionNode = (a.initial, region_of((0,) * a.dim, bound))
    graph: Dict[RegionNode, List[RegionNode]] = {}
    queue: Deque[RegionNode] = deque([start])
    seen: Set[RegionNode] = {start}
    while queue:
        node = queue.popleft()
        succ = region_successors(a, node)
        graph[node] = succ
        for s in succ:
            if s not in seen:
                seen.add(s)
                queue.append(s)
    logger.debug("region graph of %s: %d reachable nodes", a.name, len(graph))
    return graph


def _components(graph: Dict[RegionNode, List[RegionNode]]) -> List[List[RegionNode]]:
    index: Dict[RegionNode, int] = {}
    low: Dict[RegionNode, int] = {}
    on_stack: Set[RegionNode] = set()
    stack: List[RegionNode] = []
    components: List[List[RegionNode]] = []
    counter = 0
    for root in graph:
        if root in index:
            continue
        work: List[Tuple[RegionNode, int]] = [(root, 0)]
        while work:
            v, i = work.pop()
            if i == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack.add(v)
            succ = graph[v]
            if i < len(succ):
                work.append((v, i + 1))
                w = succ[i]
                if w not in index:
                    work.append((w, 0))
                elif w in on_stack:
                    low[v] = min(low[v], index[w])
                continue
            if low[v] == index[v]:
                component: List[RegionNode] = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    component.append(w)
                    if w == v:
                        break
                components.append(component)
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return components


def oracle_buchi_nonempty(a: TBA) -> bool:
    """Whether the region graph has a reachable cycle through an accepting state."""
    graph = region_graph(a)
    for component in _components(graph):
        if not any(a.is_accepting(q) for q, _ in component):
            continue
        if len(component) > 1:
            return True
        v = component[0]
        if v in graph[v]:
            return True
    return False
