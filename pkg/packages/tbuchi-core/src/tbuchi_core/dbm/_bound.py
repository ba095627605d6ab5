from __future__ import annotations

import math
from typing import NamedTuple, Union

from typing_extensions import TypeAlias

Number: TypeAlias = Union[int, float]


class Bound(NamedTuple):
    """Upper bound ``(value, weak)`` on a clock difference.

    ``weak=True`` reads ``<= value``, ``weak=False`` reads ``< value``. Tuple ordering gives the
    bound order directly: a smaller value is tighter, and on equal values strict is tighter.
    Infinity is always weak.
    """

    value: Number
    weak: bool

    @property
    def is_infinite(self) -> bool:
        return self.value == math.inf

    def __add__(self, other: object) -> "Bound":  # type: ignore[override]
        if not isinstance(other, Bound):
            return NotImplemented
        return add(self, other)

    def __str__(self) -> str:
        if self.is_infinite:
            return "<inf"
        return f"{'<=' if self.weak else '<'}{self.value}"


INF = Bound(math.inf, True)
LE_ZERO = Bound(0, True)
LT_ZERO = Bound(0, False)


def weak(value: Number) -> Bound:
    return INF if value == math.inf else Bound(value, True)


def strict(value: Number) -> Bound:
    return INF if value == math.inf else Bound(value, False)


def add(a: Bound, b: Bound) -> Bound:
    if a.value == math.inf or b.value == math.inf:
        return INF
    return Bound(a.value + b.value, a.weak and b.weak)
