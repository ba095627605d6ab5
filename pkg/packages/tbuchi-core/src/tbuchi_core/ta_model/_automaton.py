from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Dict, FrozenSet, List, Mapping, Tuple

from .._constants import TAU
from .._guards import Guard
from ._errors import ModelSemanticError

LABEL_JOIN = "|"
"""str: Separator of the component labels that make up one synchronised product label"""


@dataclass(frozen=True)
class Transition:
    """Edge ``(src, guard, resets, dst)`` carrying an action label.

    Clock indices refer to the owning automaton's clock list, starting at 1.
    """

    src: str
    dst: str
    guard: Guard = field(default_factory=Guard.true)
    resets: FrozenSet[int] = frozenset()
    label: str = TAU

    def __post_init__(self) -> None:
        if any(clock < 1 for clock in self.resets):
            raise ModelSemanticError("the reference clock cannot be reset")

    @property
    def labels(self) -> FrozenSet[str]:
        """Visible action names, split apart for synchronised product labels."""
        return frozenset(self.label.split(LABEL_JOIN)) - {TAU}

    def describe(self, clocks: Tuple[str, ...]) -> str:
        parts = [f"{self.src} -> {self.dst}"]
        if self.guard:
            parts.append(f"[{self.guard.render(clocks)}]")
        if self.resets:
            parts.append("{" + ", ".join(clocks[x - 1] for x in sorted(self.resets)) + "}")
        parts.append(self.label)
        return " ".join(parts)


@dataclass(frozen=True)
class TBA:
    """Timed Büchi automaton. ``states[0]`` is the initial state.

    State invariants are kept apart from guards; :meth:`compiled` folds them into the guards of the
    outgoing transitions, which is the form the zone graph explores.
    """

    name: str
    clocks: Tuple[str, ...]
    states: Tuple[str, ...]
    transitions: Tuple[Transition, ...]
    accepting: FrozenSet[str] = frozenset()
    invariants: Tuple[Tuple[str, Guard], ...] = ()

    def __post_init__(self) -> None:
        if not self.states:
            raise ModelSemanticError(f"automaton {self.name} has no state")
        if len(set(self.states)) != len(self.states):
            raise ModelSemanticError(f"automaton {self.name} declares a state twice")
        if len(set(self.clocks)) != len(self.clocks):
            raise ModelSemanticError(f"automaton {self.name} declares a clock twice")
        known = set(self.states)
        unknown = set(self.accepting) - known
        unknown |= {state for state, _ in self.invariants} - known
        for t in self.transitions:
            unknown |= {t.src, t.dst} - known
        if unknown:
            raise ModelSemanticError(f"automaton {self.name} refers to unknown states {sorted(unknown)}")
        n = len(self.clocks)
        guards = [t.guard for t in self.transitions] + [g for _, g in self.invariants]
        for g in guards:
            if any(clock > n for clock in g.clocks()):
                raise ModelSemanticError(f"automaton {self.name} guards an undeclared clock")
        if any(clock > n for t in self.transitions for clock in t.resets):
            raise ModelSemanticError(f"automaton {self.name} resets an undeclared clock")

    @property
    def initial(self) -> str:
        return self.states[0]

    @property
    def dim(self) -> int:
        """Zone dimension, reference clock included."""
        return len(self.clocks) + 1

    @cached_property
    def _invariant_map(self) -> Mapping[str, Guard]:
        return dict(self.invariants)

    @cached_property
    def _outgoing(self) -> Mapping[str, Tuple[Transition, ...]]:
        out: Dict[str, List[Transition]] = {q: [] for q in self.states}
        for t in self.transitions:
            out[t.src].append(t)
        return {q: tuple(ts) for q, ts in out.items()}

    def invariant(self, state: str) -> Guard:
        return self._invariant_map.get(state, Guard.true())

    def outgoing(self, state: str) -> Tuple[Transition, ...]:
        return self._outgoing[state]

    @cached_property
    def _labels(self) -> FrozenSet[str]:
        return frozenset(label for t in self.transitions for label in t.labels)

    def labels(self) -> FrozenSet[str]:
        return self._labels

    def is_accepting(self, state: str) -> bool:
        return state in self.accepting

    def compiled(self) -> "TBA":
        """Same automaton with every invariant conjoined to the guards of its state's outgoing edges."""
        if not self.invariants:
            return self
        transitions = tuple(replace(t, guard=t.guard & self.invariant(t.src)) for t in self.transitions)
        return replace(self, transitions=transitions, invariants=())


@dataclass(frozen=True)
class Network:
    """Components over one shared clock list, synchronising on action labels.

    A label owned by several components makes all of its owners move together. Each set in
    ``sync_sets`` makes one transition per owned label of the set fire together.
    """

    clocks: Tuple[str, ...]
    components: Tuple[TBA, ...]
    sync_sets: Tuple[FrozenSet[str], ...] = ()

    def __post_init__(self) -> None:
        if not self.components:
            raise ModelSemanticError("a network needs at least one automaton")
        names = [c.name for c in self.components]
        if len(set(names)) != len(names):
            raise ModelSemanticError("automaton names must be unique")
        for component in self.components:
            if component.clocks != self.clocks:
                raise ModelSemanticError(f"automaton {component.name} does not use the network clocks")
        owned = frozenset(label for c in self.components for label in c.labels())
        seen: set[str] = set()
        for labels in self.sync_sets:
            missing = labels - owned
            if missing:
                raise ModelSemanticError(f"sync set refers to unused labels {sorted(missing)}")
            if labels & seen:
                raise ModelSemanticError(f"labels {sorted(labels & seen)} appear in two sync sets")
            seen |= labels
            for component in self.components:
                if len(component.labels() & labels) > 1:
                    raise ModelSemanticError(
                        f"automaton {component.name} owns more than one label of sync set {sorted(labels)}"
                    )

    def owners(self, label: str) -> Tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.components) if label in c.labels())

    def sync_set_of(self, label: str) -> FrozenSet[str]:
        for labels in self.sync_sets:
            if label in labels:
                return labels
        return frozenset()
