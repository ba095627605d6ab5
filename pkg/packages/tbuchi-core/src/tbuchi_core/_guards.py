from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence, Tuple


class Relation(str, Enum):
    LT = "<"
    LE = "<="
    EQ = "=="
    GE = ">="
    GT = ">"

    @property
    def strict(self) -> bool:
        return self in (Relation.LT, Relation.GT)


@dataclass(frozen=True)
class Atom:
    """A single clock constraint ``x ~ c`` over a proper clock.

    Args:
        clock: clock index, ``>= 1`` (index 0 is the reference clock).
        rel: comparison.
        constant: natural constant.
    """

    clock: int
    rel: Relation
    constant: int

    def __post_init__(self) -> None:
        if self.clock < 1:
            raise ValueError(f"guards cannot constrain the reference clock (got index {self.clock})")
        if self.constant < 0:
            raise ValueError(f"guard constants must be natural numbers (got {self.constant})")

    @property
    def is_upper(self) -> bool:
        return self.rel in (Relation.LT, Relation.LE)

    @property
    def is_lower(self) -> bool:
        return self.rel in (Relation.GT, Relation.GE)

    def split(self) -> Tuple["Atom", ...]:
        """Expand ``x == c`` into ``x <= c`` and ``x >= c``; other atoms are returned as is."""
        if self.rel is Relation.EQ:
            return (Atom(self.clock, Relation.LE, self.constant), Atom(self.clock, Relation.GE, self.constant))
        return (self,)

    def holds(self, value: Fraction) -> bool:
        c = self.constant
        if self.rel is Relation.LT:
            return value < c
        if self.rel is Relation.LE:
            return value <= c
        if self.rel is Relation.EQ:
            return value == c
        if self.rel is Relation.GE:
            return value >= c
        return value > c

    def renamed(self, clock: int) -> "Atom":
        return Atom(clock, self.rel, self.constant)


@dataclass(frozen=True)
class Guard:
    """Conjunction of atomic clock constraints. The empty conjunction is ``true``."""

    atoms: Tuple[Atom, ...] = ()

    @classmethod
    def true(cls) -> "Guard":
        return cls(())

    @classmethod
    def of(cls, atoms: Iterable[Atom]) -> "Guard":
        return cls(tuple(atoms))

    def __and__(self, other: "Guard") -> "Guard":
        return Guard(self.atoms + other.atoms)

    def __bool__(self) -> bool:
        return bool(self.atoms)

    def normalized(self) -> Tuple[Atom, ...]:
        """Atoms with every equality split into its two bounds."""
        return tuple(part for atom in self.atoms for part in atom.split())

    def clocks(self) -> frozenset[int]:
        return frozenset(atom.clock for atom in self.atoms)

    def max_constant(self) -> int:
        return max((atom.constant for atom in self.atoms), default=0)

    def holds(self, valuation: Sequence[Fraction]) -> bool:
        """``valuation[i]`` is the value of clock ``i``; index 0 is ignored."""
        return all(atom.holds(valuation[atom.clock]) for atom in self.atoms)

    def without_clocks(self, clocks: Iterable[int]) -> "Guard":
        dropped = set(clocks)
        return Guard(tuple(atom for atom in self.atoms if atom.clock not in dropped))

    def render(self, names: Sequence[str]) -> str:
        """Text form ``x <= 3 && y > 1`` with ``names[i-1]`` naming clock ``i``."""
        return " && ".join(f"{names[atom.clock - 1]} {atom.rel.value} {atom.constant}" for atom in self.atoms)
