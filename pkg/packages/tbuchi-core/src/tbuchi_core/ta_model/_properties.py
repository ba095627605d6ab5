from __future__ import annotations

from typing import Callable, Dict

from ._automaton import TBA
from ._generators import AutomatonBuilder


def _csma(n: int, L: int, S: int, K: int, SA: int) -> TBA:
    b = AutomatonBuilder("CsmaProperty", ["t1", "t2"])
    b.state("q0", accepting=True, invariant=[("t1", "<=", 5 * S)]).state("q1")
    b.trans("q0", "q0", "begin_1", guard=[("t1", "<", 5 * S)], reset=["t1"])
    b.trans("q0", "q0", "end_1", guard=[("t2", "<", 2 * L)], reset=["t2"])
    b.trans("q0", "q1", "end_1", guard=[("t2", ">=", 2 * L)])
    return b.build()


def _csma_collision(n: int, L: int, S: int, K: int, SA: int) -> TBA:
    # every collision must be followed by a completed emission of station 1
    b = AutomatonBuilder("CollisionProperty", ["u1", "u2"])
    b.state("q0", accepting=True, invariant=[("u1", "<=", 5 * S)])
    b.state("q1", accepting=True, invariant=[("u2", "<=", 2 * L)])
    b.trans("q0", "q1", "cd", reset=["u2"])
    b.trans("q1", "q0", "end_1", reset=["u1"])
    return b.build()


def _fischer(n: int, L: int, S: int, K: int, SA: int) -> TBA:
    T = K * n
    b = AutomatonBuilder("FischerProperty", ["o1", "o2"])
    b.state("q0", accepting=True, invariant=[("o1", "<=", 15 * T)]).state("q1")
    b.trans("q0", "q0", "enter_1", guard=[("o2", ">=", 10 * T), ("o2", "<", 15 * T)], reset=["o2"])
    b.trans("q0", "q0", "req_1", guard=[("o1", "<=", T)], reset=["o1"])
    b.trans("q0", "q1", "enter_1", guard=[("o2", ">=", 15 * T)])
    return b.build()


def _fddi(n: int, L: int, S: int, K: int, SA: int) -> TBA:
    U = 150 * SA * n
    b = AutomatonBuilder("FddiProperty", ["o1"])
    rounds = [f"q{i}" for i in range(n)]
    for state in rounds:
        b.state(state, accepting=True, invariant=[("o1", "<=", U)])
    b.state(f"q{n}")
    b.trans("q0", "q0", "!async_1")
    for i in range(n - 1):
        b.trans(rounds[i], rounds[i + 1], f"async_{i + 1}")
    b.trans(rounds[-1], "q0", f"async_{n}", reset=["o1"])
    for i in range(1, n):
        b.trans(rounds[i], "q0", f"sync_{i + 1}")
    b.trans(rounds[-1], f"q{n}", guard=[("o1", ">=", U)])
    return b.build()


def _traingate(n: int, L: int, S: int, K: int, SA: int) -> TBA:
    b = AutomatonBuilder("TrainGateProperty", ["o1", "o2"])
    b.state("q0", accepting=True, invariant=[("o2", "<=", 30 * n)]).state("q1", accepting=True)
    b.state("q2", accepting=True, invariant=[("o1", "<=", 300 * n)]).state("q3")
    b.trans("q0", "q1", "approach_1", guard=[("o2", "<=", 30 * n)], reset=["o2"])
    b.trans("q1", "q0", "leave_1")
    b.trans("q1", "q2", "stop_1", guard=[("o1", ">=", 300 * n)], reset=["o1"])
    b.trans("q1", "q3", "stop_1", guard=[("o1", "<", 300 * n)])
    b.trans("q2", "q0", "leave_1")
    return b.build()


PROPERTIES: Dict[str, Callable[[int, int, int, int, int], TBA]] = {
    "csma": _csma,
    "csma-collision": _csma_collision,
    "fischer": _fischer,
    "fddi": _fddi,
    "traingate": _traingate,
}
"""Dict[str, Callable]: Property builders by model family"""


def gen_property(family: str, n: int, L: int = 808, S: int = 26, K: int = 2, SA: int = 20) -> TBA:
    """Weak Büchi property automaton observing process 1 of a benchmark family.

    Each family reads only the parameters of its model: ``L``, ``S`` for CSMA/CD, ``K`` for
    Fischer and ``SA`` for FDDI.
    """
    if family not in PROPERTIES:
        raise ValueError(f"unknown model family {family!r}, expected one of {sorted(PROPERTIES)}")
    if n < 1:
        raise ValueError(f"the number of processes must be at least 1 (got {n})")
    return PROPERTIES[family](n, L, S, K, SA)
