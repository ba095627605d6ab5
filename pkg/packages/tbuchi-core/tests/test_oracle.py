import dataclasses
import random
from fractions import Fraction
from typing import List, Tuple

import pytest
from tbuchi_core._guards import Atom, Guard, Relation
from tbuchi_core.oracle import (
    OracleLimitError,
    Region,
    all_regions,
    iterable_regions,
    oracle_buchi_nonempty,
    oracle_executable,
    oracle_iterable_from,
    oracle_omega_iterable,
    region_count_bound,
    region_graph,
    region_of,
    region_post,
    region_successors,
    simulate,
    zone_iteration_omega_iterable,
)
from tbuchi_core.ta_model import AutomatonBuilder, Transition, gen_drifting_loop


def loop(*atoms: Tuple[int, str, int], resets: Tuple[int, ...] = ()) -> Transition:
    g = Guard.of(Atom(clock, Relation(rel), c) for clock, rel, c in atoms)
    return Transition("q", "q", g, frozenset(resets))


def test_region_of_zero() -> None:
    r = region_of((0, 0, 0), 3)
    assert r == Region(3, (0, 0), frozenset({1, 2}), ())


def test_region_of_equal_fractions() -> None:
    r = region_of((0, Fraction(3, 2), Fraction(5, 2)), 3)
    assert r.ints == (1, 2)
    assert r.zero == frozenset()
    assert r.order == (frozenset({1, 2}),)


def test_region_of_caps_large_values() -> None:
    r = region_of((0, 7, Fraction(1, 3)), 3)
    assert r.above(1) and not r.above(2)
    assert r.order == (frozenset({2}),)
    assert region_of((0, 3, 0), 3).zero == frozenset({1, 2})
    with pytest.raises(ValueError):
        region_of((0, -1), 3)


def test_time_successors_reach_the_unbounded_region() -> None:
    chain = region_of((0, 0, Fraction(1, 2)), 1).delays()
    assert chain[0] == region_of((0, 0, Fraction(1, 2)), 1)
    assert chain[1] == region_of((0, Fraction(1, 4), Fraction(3, 4)), 1)
    assert chain[2] == region_of((0, Fraction(1, 2), 1), 1)
    assert chain[-1].above(1) and chain[-1].above(2)
    assert chain[-1].time_successor() is None


def test_regions_are_distinct_and_within_bound() -> None:
    for n, bound in [(1, 0), (1, 3), (2, 1), (2, 2), (3, 1)]:
        regions = all_regions(n, bound)
        assert len(set(regions)) == len(regions)
        assert len(regions) <= region_count_bound(n, bound)
    assert len(all_regions(1, 1)) == 4


def test_region_limit() -> None:
    with pytest.raises(OracleLimitError):
        all_regions(4, 20)


def test_every_grid_point_lands_in_an_enumerated_region() -> None:
    regions = set(all_regions(2, 2))
    points = [Fraction(k, 4) for k in range(14)]
    for a in points:
        for b in points:
            assert region_of((0, a, b), 2) in regions


def test_region_post_matches_simulation() -> None:
    t = loop((1, ">=", 1), (2, "<", 2), resets=(1,))
    start = region_of((0, 0, 0), 2)
    assert region_post(start, [t]) == {region_of((0, 0, 1), 2), region_of((0, 0, Fraction(3, 2)), 2)}
    assert simulate([t], (0, 0, 0), [Fraction(3, 2)]) == (0, 0, Fraction(3, 2))
    assert simulate([t], (0, 0, 0), [2]) is None
    with pytest.raises(ValueError):
        simulate([t], (0, 0, 0), [])


def test_oracle_executable() -> None:
    t = loop((1, "<=", 2))
    assert oracle_executable([t], (0, 2))
    assert not oracle_executable([t], (0, Fraction(5, 2)))


@pytest.mark.parametrize(
    "sigma, expected",
    [
        ([loop((1, "<=", 5), resets=(1,))], True),
        ([loop((1, ">=", 1), (2, "<=", 2), resets=(1,))], False),
        ([loop((1, "==", 1), resets=(1,))], True),
        ([loop((1, "<=", 1)), loop((1, ">=", 3))], False),
        ([loop((1, ">=", 1), (2, ">=", 3), resets=(1,))], True),
    ],
)
def test_omega_iterability_examples(sigma: List[Transition], expected: bool) -> None:
    assert oracle_omega_iterable(sigma) is expected
    assert zone_iteration_omega_iterable(sigma) is expected


def test_iterable_from_single_valuations() -> None:
    sigma = [loop((1, "==", 1), resets=(1,))]
    assert oracle_iterable_from(sigma, (0, 1))
    assert oracle_iterable_from(sigma, (0, Fraction(1, 2)))
    assert not oracle_iterable_from(sigma, (0, Fraction(3, 2)))
    assert region_of((0, 2), 1) not in iterable_regions(sigma)
    with pytest.raises(ValueError):
        oracle_iterable_from([loop((2, "<", 1))], (0, 0))


@pytest.mark.parametrize("shard", range(4))
def test_region_and_zone_iteration_agree(shard: int) -> None:
    rng = random.Random(8800 + shard)
    relations = ["<", "<=", "==", ">=", ">"]
    for _ in range(25):
        n = rng.randint(1, 2)
        sigma: List[Transition] = []
        for _ in range(rng.randint(1, 3)):
            atoms = [(rng.randint(1, n), rng.choice(relations), rng.randint(0, 2)) for _ in range(rng.randint(0, 2))]
            sigma.append(loop(*atoms, resets=tuple(x for x in range(1, n + 1) if rng.random() < 0.5)))
        assert oracle_omega_iterable(sigma, n) == zone_iteration_omega_iterable(sigma, n)


def test_region_graph_of_drifting_loop() -> None:
    a = gen_drifting_loop(bound=2)
    graph = region_graph(a)
    start = ("q0", region_of((0, 0, 0), 2))
    assert start in graph
    assert ("q0", region_of((0, 0, 1), 2)) in graph[start]
    assert all(q in ("q0", "q1") for q, _ in graph)
    assert oracle_buchi_nonempty(a)


def test_region_graph_without_accepting_cycle() -> None:
    b = AutomatonBuilder("Bounded", ["x", "y"])
    b.state("q", accepting=True)
    b.trans("q", "q", "tick", guard=[("x", "==", 1), ("y", "<=", 2)], reset=["x"])
    assert not oracle_buchi_nonempty(b.build())
    assert not oracle_buchi_nonempty(dataclasses.replace(gen_drifting_loop(bound=2), accepting=frozenset()))


def test_region_successors_respect_guards() -> None:
    a = gen_drifting_loop(bound=2)
    succ = region_successors(a, ("q0", region_of((0, 0, Fraction(5, 2)), 2)))
    assert {q for q, _ in succ} == {"q0"}
