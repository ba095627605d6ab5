from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Tuple

from ._bound import INF, LE_ZERO, Bound, Number
from ._zone import Zone, _freeze, _thaw, canonicalize, close

NO_BOUND = -math.inf
"""float: Constant of a clock that never appears in a guard of the given polarity"""


@dataclass(frozen=True)
class LUBounds:
    """Per-clock maximal lower (``lower``) and upper (``upper``) guard constants.

    Index 0 is the reference clock and is fixed to 0. Clocks without a guard of a polarity carry
    ``NO_BOUND``.
    """

    lower: Tuple[Number, ...]
    upper: Tuple[Number, ...]

    def __post_init__(self) -> None:
        if len(self.lower) != len(self.upper):
            raise ValueError("lower and upper bound vectors must have the same length")

    @classmethod
    def unbounded(cls, dim: int) -> "LUBounds":
        return cls((0,) + (NO_BOUND,) * (dim - 1), (0,) + (NO_BOUND,) * (dim - 1))

    @classmethod
    def of(cls, lower: Sequence[Number], upper: Sequence[Number]) -> "LUBounds":
        """Build from per-proper-clock vectors (clock 1 first)."""
        return cls((0, *lower), (0, *upper))

    @property
    def dim(self) -> int:
        return len(self.lower)


def extrapolate_lu_plus(z: Zone, lu: LUBounds) -> Zone:
    """Extra+ abstraction with separate lower and upper constants.

    On canonical ``z`` (with ``c_ij`` the value of ``m[i][j]``):

    - ``m[i][j] := inf`` if ``c_ij > L(x_i)``, or ``-c_0i > L(x_i)``, or ``-c_0j > U(x_j)`` with ``i != 0``;
    - ``m[0][j] := (<, -U(x_j))`` if ``-c_0j > U(x_j)`` (``(<=, 0)`` when ``x_j`` has no upper constant).

    The result contains ``z``, is canonical and is a fixpoint of the operator.
    """
    if lu.dim != z.dim:
        raise ValueError(f"bounds of dimension {lu.dim} do not match zone of dimension {z.dim}")
    z = canonicalize(z)
    if z.is_empty_marker:
        return z
    src = z.m
    lower, upper = lu.lower, lu.upper
    neg_lower = [-src[0][i].value for i in range(z.dim)]
    rows = _thaw(src)
    changed = False
    for i in range(z.dim):
        for j in range(z.dim):
            if i == j:
                continue
            c = src[i][j]
            if c.value == math.inf:
                continue
            if i != 0 and (c.value > lower[i] or neg_lower[i] > lower[i] or neg_lower[j] > upper[j]):
                rows[i][j] = INF
                changed = True
            elif i == 0 and neg_lower[j] > upper[j]:
                relaxed = LE_ZERO if upper[j] == NO_BOUND else Bound(-upper[j], False)
                if relaxed != c:
                    rows[i][j] = relaxed
                    changed = True
    if not changed:
        return z
    close(rows)
    return Zone(z.dim, _freeze(rows))
