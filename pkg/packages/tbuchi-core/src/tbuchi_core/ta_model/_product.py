from __future__ import annotations

import itertools
import logging
from collections import deque
from typing import Deque, Dict, FrozenSet, Iterator, List, Sequence, Tuple, Union

from .._constants import LOGGER_NAME, TAU
from .._guards import Guard
from ._automaton import LABEL_JOIN, TBA, Network, Transition
from ._errors import ModelSemanticError

logger = logging.getLogger(LOGGER_NAME)

GlobalState = Tuple[str, ...]
Move = Tuple[Tuple[int, Transition], ...]


def _state_name(parts: Sequence[str]) -> str:
    return ".".join(parts)


def _claim(named: Dict[str, Tuple[str, ...]], state: Tuple[str, ...]) -> str:
    name = _state_name(state)
    clash = named.setdefault(name, state)
    if clash != state:
        raise ModelSemanticError(f"product states {clash} and {state} are both named {name!r}")
    return name


def _conjunction(guards: Sequence[Guard]) -> Guard:
    return Guard(tuple(atom for g in guards for atom in g.atoms))


Group = Tuple[Tuple[int, FrozenSet[str]], ...]


def _label_groups(net: Network) -> List[Group]:
    """Participants of each joint move: every owner of a free label, then every owner in a sync set."""
    synced = frozenset(label for labels in net.sync_sets for label in labels)
    free = sorted(frozenset(label for c in net.components for label in c.labels()) - synced)
    groups: List[Group] = []
    for labels in [frozenset({label}) for label in free] + list(net.sync_sets):
        owners = sorted({i for label in labels for i in net.owners(label)})
        groups.append(tuple((i, net.components[i].labels() & labels) for i in owners))
    return groups


def _moves(net: Network, groups: Sequence[Group], state: GlobalState) -> Iterator[Move]:
    """Enabled combinations of component transitions, in a stable order."""
    for i, component in enumerate(net.components):
        for t in component.outgoing(state[i]):
            if t.label == TAU:
                yield ((i, t),)
    for group in groups:
        options: List[List[Tuple[int, Transition]]] = []
        for i, mine in group:
            enabled = [(i, t) for t in net.components[i].outgoing(state[i]) if t.label in mine]
            if not enabled:
                break
            options.append(enabled)
        else:
            yield from itertools.product(*options)


def flatten(model: Union[TBA, Network], name: str = "product") -> TBA:
    """Reachable synchronised product of a network's components.

    Product states are named by joining component states with ``.``; two reachable product states
    that end up with the same name raise :class:`ModelSemanticError`. A product state is accepting
    when every component that declares accepting states is in one of them. Its invariant is the
    conjunction of the component invariants.
    """
    if isinstance(model, TBA):
        return model
    net = model
    initial: GlobalState = tuple(c.initial for c in net.components)
    declaring = [i for i, c in enumerate(net.components) if c.accepting]
    groups = _label_groups(net)
    order: List[GlobalState] = [initial]
    seen = {initial}
    named: Dict[str, GlobalState] = {}
    _claim(named, initial)
    queue: Deque[GlobalState] = deque([initial])
    transitions: List[Transition] = []
    while queue:
        state = queue.popleft()
        for move in _moves(net, groups, state):
            target = list(state)
            resets: set[int] = set()
            for i, t in move:
                target[i] = t.dst
                resets |= t.resets
            dst = tuple(target)
            if dst not in seen:
                _claim(named, dst)
                seen.add(dst)
                order.append(dst)
                queue.append(dst)
            transitions.append(
                Transition(
                    src=_state_name(state),
                    dst=_state_name(dst),
                    guard=_conjunction([t.guard for _, t in move]),
                    resets=frozenset(resets),
                    label=LABEL_JOIN.join(dict.fromkeys(t.label for _, t in move)),
                )
            )
    accepting = frozenset(
        _state_name(s) for s in order if declaring and all(s[i] in net.components[i].accepting for i in declaring)
    )
    invariants = []
    for s in order:
        invariant = _conjunction([c.invariant(s[i]) for i, c in enumerate(net.components)])
        if invariant:
            invariants.append((_state_name(s), invariant))
    logger.info(
        "flattened %d automata into %d states and %d transitions", len(net.components), len(order), len(transitions)
    )
    return TBA(
        name=name,
        clocks=net.clocks,
        states=tuple(_state_name(s) for s in order),
        transitions=tuple(transitions),
        accepting=accepting,
        invariants=tuple(invariants),
    )


def _shift(g: Guard, offset: int) -> Guard:
    return Guard(tuple(atom.renamed(atom.clock + offset) for atom in g.atoms))


def _matches(observer_label: str, labels: frozenset[str]) -> bool:
    if observer_label.startswith("!"):
        return observer_label[1:] not in labels
    return observer_label in labels


def product(model: Union[TBA, Network], prop: TBA) -> TBA:
    """Product of a model with a property automaton observing its action labels.

    The property's clocks come after the model's. A property edge labelled ``a`` moves together
    with every model move whose labels include ``a``; ``!a`` matches every observed move without
    ``a``. Model moves whose labels are all outside the property alphabet leave the property in
    place, and property ``tau`` edges move alone. Accepting states are those whose property
    component is accepting.
    """
    flat = flatten(model)
    clash = set(flat.clocks) & set(prop.clocks)
    if clash:
        raise ModelSemanticError(f"property clocks {sorted(clash)} clash with model clocks")
    alphabet = frozenset(t.label.lstrip("!") for t in prop.transitions if t.label != TAU)
    missing = alphabet - flat.labels()
    if missing:
        raise ModelSemanticError(f"label referenced by property but absent from network: {sorted(missing)}")
    offset = len(flat.clocks)
    initial = (flat.initial, prop.initial)
    order: List[Tuple[str, str]] = [initial]
    seen = {initial}
    queue: Deque[Tuple[str, str]] = deque([initial])
    transitions: List[Transition] = []
    claimed: Dict[str, Tuple[str, ...]] = {}
    names: Dict[Tuple[str, str], str] = {initial: _claim(claimed, initial)}

    def visit(target: Tuple[str, str]) -> str:
        if target not in seen:
            seen.add(target)
            order.append(target)
            queue.append(target)
            names[target] = _claim(claimed, target)
        return names[target]

    while queue:
        q, p = queue.popleft()
        src = names[(q, p)]
        for t in flat.outgoing(q):
            observed = t.labels & alphabet
            if not observed:
                transitions.append(Transition(src, visit((t.dst, p)), t.guard, t.resets, t.label))
                continue
            for u in prop.outgoing(p):
                if u.label == TAU or not _matches(u.label, t.labels):
                    continue
                transitions.append(
                    Transition(
                        src,
                        visit((t.dst, u.dst)),
                        t.guard & _shift(u.guard, offset),
                        t.resets | frozenset(x + offset for x in u.resets),
                        t.label,
                    )
                )
        for u in prop.outgoing(p):
            if u.label == TAU:
                resets = frozenset(x + offset for x in u.resets)
                transitions.append(Transition(src, visit((q, u.dst)), _shift(u.guard, offset), resets))
    invariants = []
    for q, p in order:
        invariant = flat.invariant(q) & _shift(prop.invariant(p), offset)
        if invariant:
            invariants.append((names[(q, p)], invariant))
    logger.info(
        "product with property %s has %d states and %d transitions", prop.name, len(order), len(transitions)
    )
    return TBA(
        name=f"{flat.name}_{prop.name}",
        clocks=flat.clocks + prop.clocks,
        states=tuple(names[s] for s in order),
        transitions=tuple(transitions),
        accepting=frozenset(names[(q, p)] for q, p in order if p in prop.accepting),
        invariants=tuple(invariants),
    )
