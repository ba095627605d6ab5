"""Transformation graphs of transition sequences.

A graph over ``k`` columns has one variable ``(c, x_i)`` per column ``c`` and clock ``x_i``,
``x_0`` included. An edge ``p -> q`` of weight ``w`` asks ``v(q) - v(p) ⊑ w`` of a solution ``v``;
it is stored DBM-style in ``m[q][p]``. Values of a column form a loose valuation: ``v(x_0)`` is
minus the time elapsed so far and ``v(x_i) - v(x_0)`` is the value of clock ``x_i``.

:class:`TransGraph` keeps only the outer two columns, closed; :class:`ColumnGraph` keeps every
column of the underlying construction and is used to check that shortening commutes with
composition.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import List, Optional, Sequence

from ..dbm import INF, LE_ZERO, LT_ZERO, Bound, Matrix, Number, Zone, close
from ..ta_model import Transition


def _index(column: int, clock: int, n: int) -> int:
    return column * (n + 1) + clock


def _blank(size: int) -> List[List[Bound]]:
    rows = [[INF] * size for _ in range(size)]
    for i in range(size):
        rows[i][i] = LE_ZERO
    return rows


def _edge(rows: List[List[Bound]], p: int, q: int, w: Bound) -> None:
    if w < rows[q][p]:
        rows[q][p] = w


def _project(rows: Sequence[Sequence[Bound]], columns: Sequence[int], n: int) -> Matrix:
    picked = [_index(c, i, n) for c in columns for i in range(n + 1)]
    return tuple(tuple(rows[a][b] for b in picked) for a in picked)


def _var_name(index: int, n: int, names: Optional[Sequence[str]]) -> str:
    column, clock = divmod(index, n + 1)
    if clock == 0:
        label = "x0"
    elif names is not None:
        label = names[clock - 1]
    else:
        label = f"x{clock}"
    return f"({column},{label})"


def _dump(m: Matrix, n: int, names: Optional[Sequence[str]]) -> List[str]:
    lines: List[str] = []
    for p in range(len(m)):
        for q in range(len(m)):
            w = m[q][p]
            if p != q and not w.is_infinite:
                lines.append(f"{_var_name(p, n, names)} -> {_var_name(q, n, names)} {w}")
    return lines


def _satisfies(m: Matrix, values: Sequence[Number]) -> bool:
    for q, row in enumerate(m):
        for p, w in enumerate(row):
            if w.is_infinite:
                continue
            diff = values[q] - values[p]
            if diff > w.value or (diff == w.value and not w.weak):
                return False
    return True


@dataclass(frozen=True)
class ColumnGraph:
    """Transformation graph with all its columns; ``m`` is not closed."""

    n: int
    columns: int
    m: Matrix

    @classmethod
    def of_transition(cls, t: Transition, n: int) -> "ColumnGraph":
        """Three-column graph: time elapse, then guard, then reset."""
        if any(clock > n for clock in t.guard.clocks()) or any(clock > n for clock in t.resets):
            raise ValueError(f"transition {t.src} -> {t.dst} uses a clock beyond x{n}")
        rows = _blank(3 * (n + 1))
        _edge(rows, _index(0, 0, n), _index(1, 0, n), LE_ZERO)
        for i in range(1, n + 1):
            _edge(rows, _index(0, i, n), _index(1, i, n), LE_ZERO)
            _edge(rows, _index(1, i, n), _index(0, i, n), LE_ZERO)
        for atom in t.guard.normalized():
            bound = Bound(atom.constant, not atom.rel.strict)
            if atom.is_upper:
                _edge(rows, _index(1, 0, n), _index(1, atom.clock, n), bound)
            else:
                _edge(rows, _index(1, atom.clock, n), _index(1, 0, n), Bound(-atom.constant, bound.weak))
        for i in range(n + 1):
            if i in t.resets:
                _edge(rows, _index(1, i, n), _index(2, i, n), LE_ZERO)
                _edge(rows, _index(2, 0, n), _index(2, i, n), LE_ZERO)
                _edge(rows, _index(2, i, n), _index(2, 0, n), LE_ZERO)
            else:
                _edge(rows, _index(1, i, n), _index(2, i, n), LE_ZERO)
                _edge(rows, _index(2, i, n), _index(1, i, n), LE_ZERO)
        for c in range(3):
            for i in range(1, n + 1):
                _edge(rows, _index(c, i, n), _index(c, 0, n), LE_ZERO)
        return cls(n, 3, tuple(tuple(row) for row in rows))

    def chain(self, other: "ColumnGraph") -> "ColumnGraph":
        """Place ``other`` after this graph, tying the junction columns with zero edges both ways."""
        if other.n != self.n:
            raise ValueError(f"cannot chain graphs over {self.n} and {other.n} clocks")
        n = self.n
        width = n + 1
        offset = self.columns * width
        rows = _blank((self.columns + other.columns) * width)
        for a, row in enumerate(self.m):
            for b, w in enumerate(row):
                rows[a][b] = w
        for a, row in enumerate(other.m):
            for b, w in enumerate(row):
                rows[offset + a][offset + b] = w
        last = self.columns - 1
        for i in range(width):
            _edge(rows, _index(last, i, n), offset + i, LE_ZERO)
            _edge(rows, offset + i, _index(last, i, n), LE_ZERO)
        return ColumnGraph(n, self.columns + other.columns, tuple(tuple(row) for row in rows))

    def shorten(self) -> "TransGraph":
        rows = [list(row) for row in self.m]
        if not close(rows):
            return TransGraph.empty_graph(self.n)
        return TransGraph(self.n, _project(rows, (0, self.columns - 1), self.n))

    def is_solution(self, valuations: Sequence[Sequence[Number]]) -> bool:
        """``valuations[c][i]`` is the value of ``(c, x_i)``."""
        if len(valuations) != self.columns or any(len(v) != self.n + 1 for v in valuations):
            raise ValueError(f"expected {self.columns} loose valuations over {self.n + 1} variables")
        return _satisfies(self.m, [value for v in valuations for value in v])

    def edges(self, names: Optional[Sequence[str]] = None) -> List[str]:
        return _dump(self.m, self.n, names)


@dataclass(frozen=True)
class TransGraph:
    """Short transformation graph: the closed restriction to the leftmost and rightmost columns.

    An empty graph stands for a sequence without any execution and absorbs composition.
    """

    n: int
    m: Matrix
    empty: bool = False

    @classmethod
    def empty_graph(cls, n: int) -> "TransGraph":
        size = 2 * (n + 1)
        return cls(n, tuple((LT_ZERO,) * size for _ in range(size)), True)

    @classmethod
    def identity(cls, n: int) -> "TransGraph":
        """Graph of a zero-delay transition without guard or reset."""
        rows = _blank(2 * (n + 1))
        for i in range(n + 1):
            _edge(rows, _index(0, i, n), _index(1, i, n), LE_ZERO)
            _edge(rows, _index(1, i, n), _index(0, i, n), LE_ZERO)
        for c in range(2):
            for i in range(1, n + 1):
                _edge(rows, _index(c, i, n), _index(c, 0, n), LE_ZERO)
        close(rows)
        return cls(n, tuple(tuple(row) for row in rows))

    @property
    def dim(self) -> int:
        """Zone dimension of each column."""
        return self.n + 1

    def is_solution(self, left: Sequence[Number], right: Sequence[Number]) -> bool:
        if self.empty:
            return False
        if len(left) != self.dim or len(right) != self.dim:
            raise ValueError(f"expected loose valuations over {self.dim} variables")
        return _satisfies(self.m, [*left, *right])

    def edges(self, names: Optional[Sequence[str]] = None) -> List[str]:
        return [] if self.empty else _dump(self.m, self.n, names)


def graph_of_transition(t: Transition, n: int) -> TransGraph:
    return ColumnGraph.of_transition(t, n).shorten()


def compose(g1: TransGraph, g2: TransGraph) -> TransGraph:
    """``|G1 ⊙ G2|``: glue the right column of ``g1`` to the left column of ``g2`` and shorten."""
    if g1.n != g2.n:
        raise ValueError(f"cannot compose graphs over {g1.n} and {g2.n} clocks")
    n = g1.n
    if g1.empty or g2.empty:
        return TransGraph.empty_graph(n)
    width = n + 1
    rows = _blank(3 * width)
    for a, row in enumerate(g1.m):
        for b, w in enumerate(row):
            rows[a][b] = w
    for a, row in enumerate(g2.m):
        target = rows[width + a]
        for b, w in enumerate(row):
            if w < target[width + b]:
                target[width + b] = w
    if not close(rows):
        return TransGraph.empty_graph(n)
    return TransGraph(n, _project(rows, (0, 2), n))


def graph_of_sequence(transitions: Sequence[Transition], n: int) -> TransGraph:
    if not transitions:
        raise ValueError("a transformation graph needs at least one transition")
    return reduce(compose, (graph_of_transition(t, n) for t in transitions))


def _column_zone(g: TransGraph, column: int) -> Zone:
    if g.empty:
        return Zone.empty(g.dim)
    return Zone(g.dim, _project(g.m, (column,), g.n))


def left(g: TransGraph) -> Zone:
    """Valuations from which the sequence can be executed."""
    return _column_zone(g, 0)


def right(g: TransGraph) -> Zone:
    """Valuations reachable by the sequence, normalised to ``x0 = 0``."""
    return _column_zone(g, 1)


def bump_eq(g1: TransGraph, g2: TransGraph) -> bool:
    return left(g1) == left(g2) and right(g1) == right(g2)


def restrict_right(g: TransGraph, z: Zone) -> TransGraph:
    """Graph of the executions of ``g`` that end inside ``z``."""
    if z.dim != g.dim:
        raise ValueError(f"zone of dimension {z.dim} does not fit a graph over {g.n} clocks")
    if g.empty or z.is_empty_marker:
        return TransGraph.empty_graph(g.n)
    rows = [list(row) for row in g.m]
    for i in range(g.dim):
        for j in range(g.dim):
            a, b = _index(1, i, g.n), _index(1, j, g.n)
            if z.m[i][j] < rows[a][b]:
                rows[a][b] = z.m[i][j]
    if not close(rows):
        return TransGraph.empty_graph(g.n)
    return TransGraph(g.n, tuple(tuple(row) for row in rows))
