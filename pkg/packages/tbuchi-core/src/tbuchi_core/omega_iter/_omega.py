"""Deciding whether a transition sequence can be repeated forever.

Cheap syntactic checks settle most sequences. The remaining ones are decided by squaring the
transformation graph of the sequence until its outer columns stop changing, which also yields the
zone of valuations from which the repetition never blocks.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import FrozenSet, List, Optional, Sequence, Tuple, Union

from .._constants import LOGGER_NAME
from .._guards import Atom, Guard, Relation
from ..dbm import Zone, intersect
from ..ta_model import Transition
from ..transform_graph import TransGraph, bump_eq, compose, graph_of_sequence, left, restrict_right
from ..zone_graph import post_zone
from ._metrics import graph_compositions_total

logger = logging.getLogger(LOGGER_NAME)

SQUARING_CEILING = 24
"""int: Hard stop for the squaring loop once the syntactic checks have answered "iterable"."""


@dataclass(frozen=True)
class NotIterable:
    reason: str
    condition: int


@dataclass(frozen=True)
class AlwaysIterable:
    reason: str = "no reset clock needs a positive delay"


@dataclass(frozen=True)
class Reduced:
    """The sequence with every guard on a never-reset clock dropped."""

    sequence: Tuple[Transition, ...]
    eliminated: FrozenSet[int]


PreVerdict = Union[NotIterable, AlwaysIterable, Reduced]


@dataclass(frozen=True)
class IterResult:
    """Outcome of :func:`omega_iterable`.

    Args:
        iterable: verdict.
        zone: valuations from which the sequence repeats forever; ``None`` when not iterable.
        reason: short human readable explanation.
        compositions: graph compositions spent on the decision.
        squarings: how many times the graph was squared.
        active_clocks: clocks occurring in the sequence the loop ran on.
        trace: left projection of every computed power over the active clocks only, in order.
    """

    iterable: bool
    zone: Optional[Zone]
    reason: str
    compositions: int = 0
    squarings: int = 0
    active_clocks: int = 0
    trace: Tuple[Zone, ...] = ()


def sequence_clocks(transitions: Sequence[Transition]) -> FrozenSet[int]:
    return frozenset().union(*(t.guard.clocks() | t.resets for t in transitions))


def reset_clocks(transitions: Sequence[Transition]) -> FrozenSet[int]:
    return frozenset().union(*(t.resets for t in transitions))


def _atoms(transitions: Sequence[Transition], clocks: FrozenSet[int]) -> List[Atom]:
    return [atom for t in transitions for atom in t.guard.normalized() if atom.clock in clocks]


def _conflicting(upper: Atom, lower: Atom) -> bool:
    if upper.constant != lower.constant:
        return upper.constant < lower.constant
    return upper.rel.strict or lower.rel.strict


def preprocess(transitions: Sequence[Transition]) -> PreVerdict:
    """Syntactic pre-check on the guards of the sequence.

    Clocks reset somewhere on the sequence are called reset clocks, the others unreset clocks.
    """
    resets = reset_clocks(transitions)
    unreset = sequence_clocks(transitions) - resets
    on_reset = _atoms(transitions, resets)
    on_unreset = _atoms(transitions, unreset)
    uppers = [a for a in on_unreset if a.is_upper]
    lowers = [a for a in on_unreset if a.is_lower]

    for up_atom in uppers:
        for low_atom in lowers:
            if up_atom.clock == low_atom.clock and _conflicting(up_atom, low_atom):
                return NotIterable(
                    f"condition 1: clock {up_atom.clock} is never reset and must stay "
                    f"{up_atom.rel.value} {up_atom.constant} and {low_atom.rel.value} {low_atom.constant}",
                    1,
                )

    delaying = [a for a in on_reset if a.is_lower and a.constant > 0]
    if delaying and uppers:
        x, y = delaying[0], uppers[0]
        return NotIterable(
            f"condition 2: reset clock {x.clock} needs {x.rel.value} {x.constant} every round "
            f"while unreset clock {y.clock} stays {y.rel.value} {y.constant}",
            2,
        )

    positive = [a for a in on_reset if a.rel is Relation.GT and a.constant == 0]
    pinned = sorted(
        {u.clock for u in uppers for low in lowers if u.clock == low.clock and u.constant == low.constant}
    )
    if positive and pinned:
        return NotIterable(
            f"condition 3: reset clock {positive[0].clock} needs a positive delay "
            f"while unreset clock {pinned[0]} is pinned to a constant",
            3,
        )

    if not delaying:
        return AlwaysIterable()
    reduced = tuple(replace(t, guard=t.guard.without_clocks(unreset)) for t in transitions)
    return Reduced(reduced, unreset)


def _compose(g1: TransGraph, g2: TransGraph) -> TransGraph:
    graph_compositions_total.inc()
    return compose(g1, g2)


def _graph(transitions: Sequence[Transition], n: int) -> TransGraph:
    graph_compositions_total.inc(len(transitions) - 1)
    return graph_of_sequence(transitions, n)


def _squaring_limit(active: int) -> int:
    return max(1, active**2)


def squaring_bound(active: int) -> int:
    """Most squarings the loop runs for ``active`` clocks before answering "not iterable".

    The loop gives up once it has compared the powers ``2**k`` and ``2**(k+1)`` with ``2**k >= active**2``.
    """
    return math.ceil(math.log2(_squaring_limit(active))) + 1


def _compact(transitions: Sequence[Transition], clocks: FrozenSet[int]) -> Tuple[Transition, ...]:
    """Renumber ``clocks`` to ``1..len(clocks)``; other clocks must not occur."""
    rename = {c: i for i, c in enumerate(sorted(clocks), start=1)}
    return tuple(
        replace(
            t,
            guard=Guard.of(atom.renamed(rename[atom.clock]) for atom in t.guard.atoms),
            resets=frozenset(rename[c] for c in t.resets),
        )
        for t in transitions
    )


def _embed(z: Zone, clocks: FrozenSet[int], dim: int) -> Zone:
    back = (0, *sorted(clocks))
    return Zone.from_bounds(
        dim, {(back[i], back[j]): z.m[i][j] for i in range(z.dim) for j in range(z.dim) if i != j}
    )


@lru_cache(maxsize=4096)
def _omega_iterable(transitions: Tuple[Transition, ...], n: int) -> IterResult:
    pre = preprocess(transitions)
    if isinstance(pre, NotIterable):
        return IterResult(False, None, pre.reason)
    work = transitions if isinstance(pre, AlwaysIterable) else pre.sequence
    clocks = sequence_clocks(work)
    active = len(clocks)
    limit = _squaring_limit(active)
    g = _graph(_compact(work, clocks), active)
    compositions = len(work) - 1
    squarings = 0
    trace: List[Zone] = []

    def refuse(reason: str) -> IterResult:
        return IterResult(False, None, reason, compositions, squarings, active, tuple(trace))

    if g.empty:
        return refuse("the sequence cannot be executed once")
    trace.append(left(g))
    k = 0
    warned = False
    while True:
        square = _compose(g, g)
        compositions += 1
        squarings += 1
        if square.empty:
            return refuse(f"{2 ** (k + 1)} repetitions cannot be executed")
        trace.append(left(square))
        if bump_eq(square, g):
            break
        if 2**k >= limit:
            if isinstance(pre, Reduced):
                return refuse(f"no stabilisation after {2**k} repetitions")
            if squarings >= SQUARING_CEILING:
                logger.warning("squaring ceiling reached on a sequence the pre-check deemed iterable")
                return refuse(f"no stabilisation after {2**k} repetitions")
            if not warned:
                logger.warning("squaring past %d repetitions for %d active clocks", 2**k, active)
                warned = True
        g = square
        k += 1
    logger.debug("stable after %d squarings (%d compositions)", squarings, compositions)

    zone = _embed(left(g), clocks, n + 1)
    if isinstance(pre, Reduced) and pre.eliminated:
        # one round under the full guards, then the reduced sequence forever
        zone = left(restrict_right(_graph(transitions, n), zone))
        if zone.is_empty_marker:
            return refuse("the repeatable valuations cannot be reached by one full round")
    reason = pre.reason if isinstance(pre, AlwaysIterable) else f"stable after {2**k} repetitions"
    return IterResult(True, zone, reason, compositions, squarings, active, tuple(trace))


def _clock_count(transitions: Sequence[Transition], n: Optional[int]) -> int:
    needed = max(sequence_clocks(transitions), default=0)
    if n is None:
        return needed
    if needed > n:
        raise ValueError(f"the sequence uses clock {needed} but only {n} clocks were given")
    return n


def omega_iterable(transitions: Sequence[Transition], n: Optional[int] = None) -> IterResult:
    """Decide whether ``transitions`` can be executed infinitely often in succession.

    ``n`` is the number of clocks of the returned zone and defaults to the largest clock index
    occurring in the sequence.
    """
    if not transitions:
        raise ValueError("cannot iterate an empty sequence")
    return _omega_iterable(tuple(transitions), _clock_count(transitions, n))


def iterable_from(transitions: Sequence[Transition], z: Zone) -> bool:
    """Whether some valuation of ``z`` starts an infinite repetition of ``transitions``."""
    result = omega_iterable(transitions, z.dim - 1)
    if not result.iterable or result.zone is None:
        return False
    return not intersect(z, result.zone).is_empty_marker


def audit_witness(transitions: Sequence[Transition], zone: Zone, rounds: int = 4) -> bool:
    """Execute the sequence ``rounds`` times from ``zone`` without abstraction.

    Returns ``False`` as soon as some intermediate zone is empty.
    """
    z = zone
    for _ in range(rounds):
        for t in transitions:
            z = post_zone(z, t)
            if z.is_empty_marker:
                return False
    return True
