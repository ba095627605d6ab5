from __future__ import annotations

from typing import Iterable, List

from .._guards import Guard, Relation
from ..dbm import NO_BOUND, LUBounds, Number
from ._automaton import TBA


def lu_bounds_of_guards(dim: int, guards: Iterable[Guard]) -> LUBounds:
    """Per-clock maximal lower and upper constants over ``guards``; ``NO_BOUND`` where a clock has none."""
    lower: List[Number] = [0] + [NO_BOUND] * (dim - 1)
    upper: List[Number] = [0] + [NO_BOUND] * (dim - 1)
    for g in guards:
        for atom in g.atoms:
            if atom.rel is not Relation.LT and atom.rel is not Relation.LE:
                lower[atom.clock] = max(lower[atom.clock], atom.constant)
            if atom.rel is not Relation.GT and atom.rel is not Relation.GE:
                upper[atom.clock] = max(upper[atom.clock], atom.constant)
    return LUBounds(tuple(lower), tuple(upper))


def compute_lu_bounds(a: TBA) -> LUBounds:
    """Global LU bounds of an automaton, state invariants included."""
    guards = [t.guard for t in a.transitions] + [g for _, g in a.invariants]
    return lu_bounds_of_guards(a.dim, guards)
