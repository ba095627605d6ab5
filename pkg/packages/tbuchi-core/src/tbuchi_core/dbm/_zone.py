from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from typing_extensions import TypeAlias

from .._guards import Atom, Guard
from ._bound import INF, LE_ZERO, LT_ZERO, Bound, Number, add

Matrix: TypeAlias = Tuple[Tuple[Bound, ...], ...]
Valuation: TypeAlias = Sequence[Union[Fraction, int, float]]


@dataclass(frozen=True)
class Zone:
    """Difference bound matrix over clocks ``x0..x(dim-1)``.

    ``m[i][j]`` bounds ``x_i - x_j``; ``x0`` is the reference clock and always reads 0. Empty zones
    are normalised to a single marker matrix, so two empty zones of the same dimension compare equal.
    """

    dim: int
    m: Matrix
    canonical: bool = True

    @classmethod
    def universe(cls, dim: int) -> "Zone":
        rows: List[List[Bound]] = [[INF] * dim for _ in range(dim)]
        for i in range(dim):
            rows[i][i] = LE_ZERO
            rows[0][i] = LE_ZERO
        return cls(dim, _freeze(rows))

    @classmethod
    def zero(cls, dim: int) -> "Zone":
        return cls(dim, tuple((LE_ZERO,) * dim for _ in range(dim)))

    @classmethod
    def empty(cls, dim: int) -> "Zone":
        return cls(dim, tuple((LT_ZERO,) * dim for _ in range(dim)))

    @classmethod
    def from_bounds(cls, dim: int, bounds: Mapping[Tuple[int, int], Bound]) -> "Zone":
        """Universe tightened by ``bounds[(i, j)]`` on ``x_i - x_j``, then canonicalised."""
        rows = _thaw(cls.universe(dim).m)
        for (i, j), b in bounds.items():
            if b < rows[i][j]:
                rows[i][j] = b
        return canonicalize(cls(dim, _freeze(rows), canonical=False))

    @property
    def is_empty_marker(self) -> bool:
        return self.m[0][0] < LE_ZERO

    def __str__(self) -> str:
        return format_zone(self)


def _freeze(rows: List[List[Bound]]) -> Matrix:
    return tuple(tuple(row) for row in rows)


def _thaw(m: Matrix) -> List[List[Bound]]:
    return [list(row) for row in m]


def close(rows: List[List[Bound]]) -> bool:
    """In-place Floyd-Warshall closure. Returns ``False`` when a negative cycle shows up."""
    dim = len(rows)
    inf = math.inf
    for k in range(dim):
        row_k = rows[k]
        for i in range(dim):
            row_i = rows[i]
            ik = row_i[k]
            if ik.value == inf:
                continue
            ik_value, ik_weak = ik
            for j in range(dim):
                kj = row_k[j]
                if kj.value == inf:
                    continue
                candidate = Bound(ik_value + kj.value, ik_weak and kj.weak)
                if candidate < row_i[j]:
                    row_i[j] = candidate
        if rows[k][k] < LE_ZERO:
            return False
    return all(rows[i][i] >= LE_ZERO for i in range(dim))


def _tighten(rows: List[List[Bound]], i: int, j: int, b: Bound) -> bool:
    """Add ``x_i - x_j <= b`` to a closed matrix and restore closure in O(dim^2)."""
    if not b < rows[i][j]:
        return True
    back = rows[j][i]
    if back.value != math.inf and Bound(b.value + back.value, b.weak and back.weak) < LE_ZERO:
        return False
    rows[i][j] = b
    dim = len(rows)
    inf = math.inf
    col_i = [rows[a][i] for a in range(dim)]
    row_j = rows[j]
    for a in range(dim):
        ai = col_i[a]
        if ai.value == inf:
            continue
        via = Bound(ai.value + b.value, ai.weak and b.weak)
        row_a = rows[a]
        for c in range(dim):
            jc = row_j[c]
            if jc.value == inf:
                continue
            candidate = Bound(via.value + jc.value, via.weak and jc.weak)
            if candidate < row_a[c]:
                row_a[c] = candidate
    return True


def canonicalize(z: Zone) -> Zone:
    """All-pairs shortest path closure. Empty results come back as the empty marker."""
    if z.canonical:
        return z
    rows = _thaw(z.m)
    if not close(rows):
        return Zone.empty(z.dim)
    return Zone(z.dim, _freeze(rows))


def is_empty(z: Zone) -> bool:
    return canonicalize(z).is_empty_marker


def includes(a: Zone, b: Zone) -> bool:
    """``True`` iff every valuation of ``b`` lies in ``a``."""
    a = canonicalize(a)
    b = canonicalize(b)
    if b.is_empty_marker:
        return True
    if a.is_empty_marker:
        return False
    for row_a, row_b in zip(a.m, b.m):
        for x, y in zip(row_a, row_b):
            if y > x:
                return False
    return True


def up(z: Zone) -> Zone:
    z = canonicalize(z)
    if z.is_empty_marker:
        return z
    rows = _thaw(z.m)
    for i in range(1, z.dim):
        rows[i][0] = INF
    return Zone(z.dim, _freeze(rows))


def atom_bound(atom: Atom) -> Tuple[int, int, Bound]:
    """Matrix cell and bound encoding a non-equality atom."""
    if atom.is_upper:
        return atom.clock, 0, Bound(atom.constant, not atom.rel.strict)
    return 0, atom.clock, Bound(-atom.constant, not atom.rel.strict)


def intersect_guard(z: Zone, g: Guard) -> Zone:
    z = canonicalize(z)
    if z.is_empty_marker or not g:
        return z
    rows = _thaw(z.m)
    for atom in g.normalized():
        if atom.clock >= z.dim:
            raise ValueError(f"guard mentions clock {atom.clock} outside a zone of dimension {z.dim}")
        i, j, b = atom_bound(atom)
        if not _tighten(rows, i, j, b):
            return Zone.empty(z.dim)
    return Zone(z.dim, _freeze(rows))


def intersect(a: Zone, b: Zone) -> Zone:
    if a.dim != b.dim:
        raise ValueError(f"cannot intersect zones of dimension {a.dim} and {b.dim}")
    rows = [[min(x, y) for x, y in zip(row_a, row_b)] for row_a, row_b in zip(a.m, b.m)]
    return canonicalize(Zone(a.dim, _freeze(rows), canonical=False))


def reset(z: Zone, clocks: Iterable[int]) -> Zone:
    z = canonicalize(z)
    targets = sorted(set(clocks))
    if z.is_empty_marker or not targets:
        return z
    rows = _thaw(z.m)
    for x in targets:
        if x == 0:
            raise ValueError("the reference clock cannot be reset")
        for j in range(z.dim):
            rows[x][j] = rows[0][j]
            rows[j][x] = rows[j][0]
        rows[x][x] = LE_ZERO
    return Zone(z.dim, _freeze(rows))


def contains(z: Zone, valuation: Valuation) -> bool:
    """Membership of a standard valuation (``valuation[0]`` is the reference and is ignored)."""
    z = canonicalize(z)
    if z.is_empty_marker:
        return False
    values = [0, *valuation[1:]]
    for i, row in enumerate(z.m):
        for j, b in enumerate(row):
            if b.value == math.inf:
                continue
            diff = values[i] - values[j]
            if diff > b.value or (diff == b.value and not b.weak):
                return False
    return True


def format_zone(z: Zone, names: Optional[Sequence[str]] = None) -> str:
    """Render a canonical zone as a conjunction, using ``names[i-1]`` for clock ``i``."""
    z = canonicalize(z)
    if z.is_empty_marker:
        return "false"

    def name(i: int) -> str:
        if names is not None and 0 < i <= len(names):
            return names[i - 1]
        return f"x{i}"

    parts: List[str] = []
    for i in range(1, z.dim):
        lower = z.m[0][i]
        upper = z.m[i][0]
        if lower != LE_ZERO:
            parts.append(f"{name(i)} {'>=' if lower.weak else '>'} {_fmt(-lower.value)}")
        if upper.value != math.inf:
            parts.append(f"{name(i)} {'<=' if upper.weak else '<'} {_fmt(upper.value)}")
    for i in range(1, z.dim):
        for j in range(1, z.dim):
            b = z.m[i][j]
            if i == j or b.value == math.inf:
                continue
            if b >= add(z.m[i][0], z.m[0][j]):
                continue
            parts.append(f"{name(i)} - {name(j)} {'<=' if b.weak else '<'} {_fmt(b.value)}")
    return " && ".join(parts) if parts else "true"


def _fmt(value: Number) -> str:
    return str(int(value)) if float(value).is_integer() else str(value)
