"""Benchmark networks.

Integer variables of the classic protocol models are replaced by automata so that everything is
expressed with clocks and synchronisation labels only.
"""

from __future__ import annotations

from collections import deque
from dataclasses import replace
from typing import Deque, FrozenSet, Iterable, List, Optional, Sequence, Tuple, TypeVar

from .._constants import TAU
from .._guards import Atom, Guard, Relation
from ._automaton import TBA, Network, Transition

AtomSpec = Tuple[str, str, int]


class AutomatonBuilder:
    """Incremental construction of a :class:`TBA` over named clocks."""

    def __init__(self, name: str, clocks: Sequence[str]) -> None:
        self.name = name
        self.clocks = tuple(clocks)
        self._index = {clock: i for i, clock in enumerate(self.clocks, start=1)}
        self._states: List[str] = []
        self._accepting: List[str] = []
        self._invariants: List[Tuple[str, Guard]] = []
        self._transitions: List[Transition] = []

    def guard(self, atoms: Iterable[AtomSpec]) -> Guard:
        return Guard.of(Atom(self._index[clock], Relation(rel), constant) for clock, rel, constant in atoms)

    def state(self, name: str, accepting: bool = False, invariant: Sequence[AtomSpec] = ()) -> "AutomatonBuilder":
        self._states.append(name)
        if accepting:
            self._accepting.append(name)
        if invariant:
            self._invariants.append((name, self.guard(invariant)))
        return self

    def trans(
        self,
        src: str,
        dst: str,
        label: str = TAU,
        guard: Sequence[AtomSpec] = (),
        reset: Sequence[str] = (),
    ) -> "AutomatonBuilder":
        resets = frozenset(self._index[clock] for clock in reset)
        self._transitions.append(Transition(src, dst, self.guard(guard), resets, label))
        return self

    def build(self) -> TBA:
        return TBA(
            name=self.name,
            clocks=self.clocks,
            states=tuple(self._states),
            transitions=tuple(self._transitions),
            accepting=frozenset(self._accepting),
            invariants=tuple(self._invariants),
        )


def _check(n: int, **constants: int) -> None:
    if n < 1:
        raise ValueError(f"the number of processes must be at least 1 (got {n})")
    for name, value in constants.items():
        if value <= 0:
            raise ValueError(f"{name} must be positive (got {value})")


def gen_csma(n: int, L: int = 808, S: int = 26, fixed: bool = False, nonzeno: bool = False) -> Network:
    """CSMA/CD: ``n`` stations and a bus.

    ``fixed`` adds the ``busy_i`` loop on RETRY that lets a station which lost a collision keep
    waiting while the bus is busy. ``nonzeno`` conjoins ``y >= 1`` to every transition leaving BUSY.
    """
    _check(n, L=L, S=S)
    clocks = [f"x_{i}" for i in range(1, n + 1)] + ["y"]
    components: List[TBA] = []
    for i in range(1, n + 1):
        x = f"x_{i}"
        b = AutomatonBuilder(f"Station{i}", clocks)
        b.state("WAIT").state("START", invariant=[(x, "<=", L)]).state("RETRY", invariant=[(x, "<", 2 * S)])
        b.trans("WAIT", "WAIT", f"cd_{i}", reset=[x])
        b.trans("WAIT", "START", f"begin_{i}", reset=[x])
        b.trans("WAIT", "RETRY", f"busy_{i}", reset=[x])
        b.trans("WAIT", "RETRY", f"cd_{i}", reset=[x])
        b.trans("RETRY", "RETRY", f"cd_{i}", reset=[x])
        b.trans("RETRY", "START", f"begin_{i}", reset=[x])
        if fixed:
            b.trans("RETRY", "RETRY", f"busy_{i}", reset=[x])
        b.trans("START", "RETRY", f"cd_{i}", guard=[(x, "<", S)], reset=[x])
        b.trans("START", "WAIT", f"end_{i}", guard=[(x, "==", L)], reset=[x])
        components.append(b.build())
    slow: List[AtomSpec] = [("y", ">=", 1)] if nonzeno else []
    bus = AutomatonBuilder("Bus", clocks)
    bus.state("IDLE").state("BUSY").state("COLLISION", invariant=[("y", "<", S)])
    for i in range(1, n + 1):
        bus.trans("IDLE", "BUSY", f"begin_{i}", reset=["y"])
        bus.trans("BUSY", "BUSY", f"busy_{i}", guard=[("y", ">=", S), *slow])
        bus.trans("BUSY", "IDLE", f"end_{i}", guard=slow, reset=["y"])
        bus.trans("BUSY", "COLLISION", f"begin_{i}", guard=[("y", "<", S), *slow], reset=["y"])
    bus.trans("COLLISION", "IDLE", "cd", guard=[("y", "<", S)], reset=["y"])
    components.append(bus.build())
    collision = frozenset(["cd"] + [f"cd_{i}" for i in range(1, n + 1)])
    return Network(tuple(clocks), tuple(components), (collision,))


def gen_fischer(n: int, K: int = 2) -> Network:
    """Fischer's mutual exclusion; the shared ``id`` variable is the automaton ``Id``."""
    _check(n, K=K)
    clocks = [f"x_{i}" for i in range(1, n + 1)]
    components: List[TBA] = []
    for i in range(1, n + 1):
        x = f"x_{i}"
        b = AutomatonBuilder(f"Process{i}", clocks)
        b.state("A").state("REQ", invariant=[(x, "<=", K)]).state("WAIT").state("CS")
        b.trans("A", "REQ", f"req_{i}", reset=[x])
        b.trans("REQ", "WAIT", f"set_{i}", guard=[(x, "<=", K)], reset=[x])
        b.trans("WAIT", "REQ", f"req_{i}", reset=[x])
        b.trans("WAIT", "CS", f"enter_{i}", guard=[(x, ">", K)])
        b.trans("CS", "A", f"exit_{i}")
        components.append(b.build())
    var = AutomatonBuilder("Id", clocks)
    for v in range(n + 1):
        var.state(f"id{v}")
    for i in range(1, n + 1):
        var.trans("id0", "id0", f"req_{i}")
    for v in range(n + 1):
        for i in range(1, n + 1):
            var.trans(f"id{v}", f"id{i}", f"set_{i}")
    for i in range(1, n + 1):
        var.trans(f"id{i}", f"id{i}", f"enter_{i}")
        var.trans(f"id{i}", "id0", f"exit_{i}")
    components.append(var.build())
    return Network(tuple(clocks), tuple(components))


_GateState = Tuple[str, Optional[int], FrozenSet[int], Optional[int]]


def _gate_name(state: _GateState) -> str:
    kind, train, waiting, other = state
    if kind == "free":
        return "FREE"
    name = f"{kind.upper()}{train}"
    if waiting:
        name += "_W" + "".join(str(j) for j in sorted(waiting))
    if other is not None:
        name += f"_S{other}"
    return name


def gen_train_gate(n: int) -> Network:
    """Trains approaching a single-track bridge and a gate controller that queues them.

    The controller remembers the train holding the bridge and the set of stopped trains; when the
    bridge frees up it releases the lowest-numbered stopped train.
    """
    _check(n)
    clocks = [f"x_{i}" for i in range(1, n + 1)]
    components: List[TBA] = []
    for i in range(1, n + 1):
        x = f"x_{i}"
        b = AutomatonBuilder(f"Train{i}", clocks)
        b.state("SAFE").state("APPR", invariant=[(x, "<=", 20)]).state("STOP")
        b.state("START", invariant=[(x, "<=", 15)]).state("CROSS", invariant=[(x, "<=", 5)])
        b.trans("SAFE", "APPR", f"approach_{i}", reset=[x])
        b.trans("APPR", "CROSS", guard=[(x, ">=", 10)], reset=[x])
        b.trans("APPR", "STOP", f"stop_{i}", guard=[(x, "<=", 10)])
        b.trans("STOP", "START", f"go_{i}", reset=[x])
        b.trans("START", "CROSS", guard=[(x, ">=", 7)], reset=[x])
        b.trans("CROSS", "SAFE", f"leave_{i}", guard=[(x, ">=", 3)])
        components.append(b.build())

    free: _GateState = ("free", None, frozenset(), None)
    gate = AutomatonBuilder("Gate", clocks)
    discovered: List[_GateState] = [free]
    seen = {free}
    queue: Deque[_GateState] = deque([free])
    edges: List[Tuple[_GateState, _GateState, str]] = []
    while queue:
        state = queue.popleft()
        kind, train, waiting, other = state
        moves: List[Tuple[_GateState, str]] = []
        if kind == "free":
            moves = [(("occ", i, frozenset(), None), f"approach_{i}") for i in range(1, n + 1)]
        elif kind == "occ":
            assert train is not None
            for j in range(1, n + 1):
                if j != train and j not in waiting:
                    moves.append((("stopping", train, waiting, j), f"approach_{j}"))
            if waiting:
                first = min(waiting)
                moves.append((("release", first, waiting - {first}, None), f"leave_{train}"))
            else:
                moves.append((free, f"leave_{train}"))
        elif kind == "stopping":
            assert other is not None
            moves = [(("occ", train, waiting | {other}, None), f"stop_{other}")]
        else:
            moves = [(("occ", train, waiting, None), f"go_{train}")]
        for target, label in moves:
            edges.append((state, target, label))
            if target not in seen:
                seen.add(target)
                discovered.append(target)
                queue.append(target)
    for state in discovered:
        gate.state(_gate_name(state))
    for src, dst, label in edges:
        gate.trans(_gate_name(src), _gate_name(dst), label)
    components.append(gate.build())
    return Network(tuple(clocks), tuple(components))


def gen_fddi(n: int, SA: int = 20, TD: int = 0) -> Network:
    """FDDI token ring with ``n`` stations and target rotation time ``TTRT = 50 * n``.

    The ring clock ``z`` times the synchronous phase of whichever station holds the token. Each
    station alternates between phases A and B; on token arrival in one phase it resets that
    phase's timer and reads the other timer as the last rotation time.
    """
    _check(n, SA=SA)
    ttrt = 50 * n
    clocks = ["z"] + [f"{t}_{i}" for i in range(1, n + 1) for t in ("zA", "zB")]
    components: List[TBA] = []
    for i in range(1, n + 1):
        b = AutomatonBuilder(f"Station{i}", clocks)
        for phase, mine, other, following in (("A", f"zA_{i}", f"zB_{i}", "B"), ("B", f"zB_{i}", f"zA_{i}", "A")):
            b.state(f"IDLE_{phase}")
            b.state(f"SYNC_{phase}", invariant=[("z", "<=", SA)])
            b.state(f"ASYNC_{phase}", invariant=[(other, "<=", ttrt)])
            b.state(f"REL_{phase}", invariant=[("z", "<=", SA)])
            b.trans(f"IDLE_{phase}", f"SYNC_{phase}", f"tt_{i}", reset=[mine])
            b.trans(f"SYNC_{phase}", f"REL_{phase}", f"sync_{i}", guard=[("z", "==", SA), (other, ">=", ttrt)])
            b.trans(f"SYNC_{phase}", f"ASYNC_{phase}", f"async_{i}", guard=[("z", "==", SA), (other, "<", ttrt)])
            b.trans(f"REL_{phase}", f"IDLE_{following}", f"rt_{i}")
            b.trans(f"ASYNC_{phase}", f"IDLE_{following}", f"rt_{i}")
        components.append(b.build())
    ring = AutomatonBuilder("Ring", clocks)
    for i in range(1, n + 1):
        ring.state(f"R{i}", invariant=[("z", "<=", TD)]).state(f"T{i}")
    for i in range(1, n + 1):
        ring.trans(f"R{i}", f"T{i}", f"tt_{i}", reset=["z"])
        ring.trans(f"T{i}", f"R{i % n + 1}", f"rt_{i}", reset=["z"])
    components.append(ring.build())
    return Network(tuple(clocks), tuple(components))


def gen_drifting_loop(bound: int = 100) -> TBA:
    """Accepting loop ``x == 1, {x}`` whose zones drift along ``y`` until ``y`` exceeds ``bound``.

    The side transition ``y == bound`` makes ``bound`` both the lower and the upper constant of
    ``y``, so the zone graph keeps ``bound + 2`` distinct zones on the loop state.
    """
    _check(1, bound=bound)
    b = AutomatonBuilder("Drift", ["x", "y"])
    b.state("q0", accepting=True).state("q1")
    b.trans("q0", "q0", "b", guard=[("x", "==", 1)], reset=["x"])
    b.trans("q0", "q1", "a", guard=[("y", "==", bound)])
    return b.build()


def _scale_guard(g: Guard, k: int) -> Guard:
    return Guard(tuple(replace(atom, constant=-(-atom.constant // k)) for atom in g.atoms))


def _scale_tba(a: TBA, k: int) -> TBA:
    return replace(
        a,
        transitions=tuple(replace(t, guard=_scale_guard(t.guard, k)) for t in a.transitions),
        invariants=tuple((state, _scale_guard(g, k)) for state, g in a.invariants),
    )


M = TypeVar("M", TBA, Network)


def scale_constants(model: M, k: int) -> M:
    """Divide every constant by ``k``, rounding up; positive constants stay at least 1."""
    if k < 1:
        raise ValueError(f"scale factor must be at least 1 (got {k})")
    if k == 1:
        return model
    if isinstance(model, TBA):
        return _scale_tba(model, k)
    return replace(model, components=tuple(_scale_tba(c, k) for c in model.components))

