"""Region-graph ground truth for small clock sets and constants.

Everything here enumerates regions explicitly and is meant for cross-checking the symbolic
procedures, never for model checking at benchmark scale.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Set, Tuple

from .._constants import LOGGER_NAME
from .._guards import Atom, Guard, Relation
from ..dbm import LUBounds, Valuation, Zone, extrapolate_lu_plus, intersect_guard, reset, up
from ..ta_model import Transition, lu_bounds_of_guards

logger = logging.getLogger(LOGGER_NAME)

REGION_LIMIT = 10**6
"""int: Largest region count the oracle agrees to enumerate"""


class OracleLimitError(RuntimeError):
    """The requested region space is larger than :data:`REGION_LIMIT`."""


@dataclass(frozen=True)
class Region:
    """Classical region over clocks ``1..n`` for maximal constant ``M``.

    ``ints[i - 1]`` is the integer part of clock ``i``, or ``M + 1`` when the clock is above ``M``.
    ``zero`` holds the clocks at most ``M`` with a null fractional part; ``order`` groups the
    remaining clocks at most ``M`` by increasing fractional part.
    """

    bound: int
    ints: Tuple[int, ...]
    zero: FrozenSet[int]
    order: Tuple[FrozenSet[int], ...]

    @property
    def n(self) -> int:
        return len(self.ints)

    def above(self, clock: int) -> bool:
        return self.ints[clock - 1] > self.bound

    def satisfies(self, atom: Atom) -> bool:
        if self.above(atom.clock):
            return atom.rel in (Relation.GE, Relation.GT)
        k = self.ints[atom.clock - 1]
        integral = atom.clock in self.zero
        c = atom.constant
        if atom.rel is Relation.LT:
            return k < c
        if atom.rel is Relation.LE:
            return k < c or (k == c and integral)
        if atom.rel is Relation.EQ:
            return k == c and integral
        if atom.rel is Relation.GE:
            return k >= c
        return k > c or (k == c and not integral)

    def satisfies_guard(self, g: Guard) -> bool:
        return all(self.satisfies(atom) for atom in g.atoms)

    def reset(self, clocks: FrozenSet[int]) -> "Region":
        if not clocks:
            return self
        ints = tuple(0 if i in clocks else k for i, k in enumerate(self.ints, start=1))
        order = tuple(group - clocks for group in self.order if group - clocks)
        return Region(self.bound, ints, self.zero | clocks, order)

    def time_successor(self) -> Optional["Region"]:
        """Next region reached by letting time elapse, ``None`` when every clock is above ``M``."""
        if self.zero:
            leaving = frozenset(x for x in self.zero if self.ints[x - 1] == self.bound)
            ints = tuple(self.bound + 1 if i in leaving else k for i, k in enumerate(self.ints, start=1))
            moving = self.zero - leaving
            order = ((moving,) if moving else ()) + self.order
            return Region(self.bound, ints, frozenset(), order)
        if not self.order:
            return None
        top = self.order[-1]
        ints = tuple(k + 1 if i in top else k for i, k in enumerate(self.ints, start=1))
        return Region(self.bound, ints, top, self.order[:-1])

    def delays(self) -> List["Region"]:
        """This region and all its time successors, in order."""
        chain = [self]
        nxt = self.time_successor()
        while nxt is not None:
            chain.append(nxt)
            nxt = nxt.time_successor()
        return chain


def max_constant(transitions: Sequence[Transition]) -> int:
    return max((t.guard.max_constant() for t in transitions), default=0)


def clock_count(transitions: Sequence[Transition]) -> int:
    return max((max(t.guard.clocks() | t.resets, default=0) for t in transitions), default=0)


def region_of(v: Valuation, bound: int) -> Region:
    """Region of a standard valuation; ``v[0]`` is the reference clock and is ignored."""
    ints: List[int] = []
    fractions: Dict[Fraction, Set[int]] = {}
    zero: Set[int] = set()
    for clock, raw in enumerate(v[1:], start=1):
        value = Fraction(raw)
        if value < 0:
            raise ValueError(f"clock {clock} has negative value {value}")
        if value > bound:
            ints.append(bound + 1)
            continue
        k = math.floor(value)
        ints.append(k)
        frac = value - k
        if frac == 0:
            zero.add(clock)
        else:
            fractions.setdefault(frac, set()).add(clock)
    order = tuple(frozenset(fractions[f]) for f in sorted(fractions))
    return Region(bound, tuple(ints), frozenset(zero), order)


def region_count_bound(n: int, bound: int) -> int:
    """Classical upper bound ``n! * 2^n * (2M + 2)^n`` on the number of regions."""
    return math.factorial(n) * 2**n * (2 * bound + 2) ** n


def _ordered_partitions(items: Sequence[int]) -> Iterator[Tuple[FrozenSet[int], ...]]:
    if not items:
        yield ()
        return
    head, rest = items[0], items[1:]
    for partition in _ordered_partitions(rest):
        for i in range(len(partition)):
            yield partition[:i] + (partition[i] | {head},) + partition[i + 1 :]
        for i in range(len(partition) + 1):
            yield partition[:i] + (frozenset({head}),) + partition[i:]


def _check_limit(n: int, bound: int) -> None:
    if region_count_bound(n, bound) > REGION_LIMIT:
        raise OracleLimitError(
            f"{n} clocks with maximal constant {bound} exceed the limit of {REGION_LIMIT} regions"
        )


def all_regions(n: int, bound: int) -> List[Region]:
    _check_limit(n, bound)
    regions: List[Region] = []
    for ints in itertools.product(range(bound + 2), repeat=n):
        pinned = frozenset(i for i, k in enumerate(ints, start=1) if k == bound)
        free = [i for i, k in enumerate(ints, start=1) if k < bound]
        for size in range(len(free) + 1):
            for chosen in itertools.combinations(free, size):
                rest = [i for i in free if i not in chosen]
                for order in _ordered_partitions(rest):
                    regions.append(Region(bound, ints, pinned | frozenset(chosen), order))
    return regions


def region_post(r: Region, transitions: Sequence[Transition]) -> FrozenSet[Region]:
    """Regions reached from ``r`` by executing ``transitions`` once, delays included."""
    current = {r}
    for t in transitions:
        nxt: Set[Region] = set()
        for region in current:
            for delayed in region.delays():
                if delayed.satisfies_guard(t.guard):
                    nxt.add(delayed.reset(t.resets))
        if not nxt:
            return frozenset()
        current = nxt
    return frozenset(current)


def oracle_executable(transitions: Sequence[Transition], v: Valuation) -> bool:
    """Whether the sequence has an execution from ``v``."""
    bound = max_constant(transitions)
    return bool(region_post(region_of(v, bound), transitions))


def simulate(
    transitions: Sequence[Transition], v: Valuation, delays: Sequence[Fraction | int]
) -> Optional[Tuple[Fraction, ...]]:
    """Exact execution with the given delays; ``None`` when some guard fails."""
    if len(delays) != len(transitions):
        raise ValueError("one delay per transition is required")
    values = [Fraction(0), *(Fraction(x) for x in v[1:])]
    for t, delay in zip(transitions, delays):
        if delay < 0:
            raise ValueError(f"negative delay {delay}")
        values = [Fraction(0), *(x + delay for x in values[1:])]
        if not t.guard.holds(values):
            return None
        for clock in t.resets:
            values[clock] = Fraction(0)
    return tuple(values)


@lru_cache(maxsize=256)
def _iterable_regions(transitions: Tuple[Transition, ...], n: int) -> FrozenSet[Region]:
    bound = max_constant(transitions)
    regions = all_regions(n, bound)
    steps: List[Dict[Region, FrozenSet[Region]]] = [{} for _ in transitions]

    def step(i: int, r: Region) -> FrozenSet[Region]:
        cached = steps[i].get(r)
        if cached is None:
            cached = region_post(r, transitions[i : i + 1])
            steps[i][r] = cached
        return cached

    succ: Dict[Region, FrozenSet[Region]] = {}
    for r in regions:
        current = frozenset({r})
        for i in range(len(transitions)):
            current = frozenset(s for c in current for s in step(i, c))
            if not current:
                break
        succ[r] = current
    preds: Dict[Region, List[Region]] = {r: [] for r in regions}
    for r, targets in succ.items():
        for s in targets:
            preds[s].append(r)
    pending = {r: len(targets) for r, targets in succ.items()}
    dead = [r for r, count in pending.items() if count == 0]
    alive = set(regions)
    while dead:
        r = dead.pop()
        alive.discard(r)
        for p in preds[r]:
            pending[p] -= 1
            if pending[p] == 0:
                dead.append(p)
    logger.debug("%d of %d regions start an infinite iteration", len(alive), len(regions))
    return frozenset(alive)


def iterable_regions(transitions: Sequence[Transition], n: Optional[int] = None) -> FrozenSet[Region]:
    """Regions from which the sequence can be repeated forever: the greatest set closed under one step."""
    n = clock_count(transitions) if n is None else n
    return _iterable_regions(tuple(transitions), n)


def oracle_omega_iterable(transitions: Sequence[Transition], n: Optional[int] = None) -> bool:
    """Whether some valuation admits an infinite execution of the repeated sequence.

    ``n`` defaults to the largest clock index the sequence mentions.
    """
    return bool(iterable_regions(transitions, n))


def oracle_iterable_from(transitions: Sequence[Transition], v: Valuation) -> bool:
    n = len(v) - 1
    if clock_count(transitions) > n:
        raise ValueError("the valuation does not cover every clock of the sequence")
    return region_of(v, max_constant(transitions)) in iterable_regions(transitions, n)


def zone_iteration_omega_iterable(transitions: Sequence[Transition], n: Optional[int] = None) -> bool:
    """Independent check: iterate the abstracted zone post of the sequence from all valuations.

    The abstraction only adds valuations simulated by the exact ones, so a repeated zone proves
    that every power of the sequence is executable.
    """
    n = clock_count(transitions) if n is None else n
    lu: LUBounds = lu_bounds_of_guards(n + 1, [t.guard for t in transitions])
    z = Zone.universe(n + 1)
    seen = {z}
    while True:
        for t in transitions:
            z = reset(intersect_guard(up(z), t.guard), t.resets)
            if z.is_empty_marker:
                return False
        z = extrapolate_lu_plus(z, lu)
        if z in seen:
            return True
        seen.add(z)
