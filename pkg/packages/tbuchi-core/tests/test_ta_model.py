import pytest
from tbuchi_core.dbm import NO_BOUND
from tbuchi_core.ta_model import (
    TBA,
    AutomatonBuilder,
    ModelSemanticError,
    ModelSyntaxError,
    Network,
    Relation,
    compute_lu_bounds,
    flatten,
    gen_csma,
    gen_drifting_loop,
    gen_fddi,
    gen_fischer,
    gen_property,
    gen_train_gate,
    parse_model,
    print_model,
    product,
    scale_constants,
)

MINIMAL = """\
clocks: x
automaton A:
  state q accepting
  trans q -> q guard x >= 1 reset {x} label a
"""


def test_parse_minimal_model() -> None:
    model = parse_model(MINIMAL)
    assert isinstance(model, TBA)
    assert model.states == ("q",)
    assert len(model.transitions) == 1
    t = model.transitions[0]
    assert t.resets == frozenset({1})
    assert t.guard.atoms[0].rel is Relation.GE
    assert t.label == "a"
    assert model.accepting == frozenset({"q"})


def test_parse_rejects_diagonal_guard() -> None:
    text = "clocks: x, y\nautomaton A:\n  state q\n  trans q -> q guard x - y < 3\n"
    with pytest.raises(ModelSemanticError, match="diagonal constraints unsupported"):
        parse_model(text)


def test_parse_reports_position() -> None:
    with pytest.raises(ModelSyntaxError) as info:
        parse_model("clocks: x\nautomaton A:\n  state q $\n")
    assert info.value.line == 3
    assert info.value.column == 11


@pytest.mark.parametrize(
    "line, message",
    [
        ("trans q -> q guard z <= 1", "unknown clock"),
        ("trans q -> q guard x <= -1", "negative constant"),
        ("trans q -> r", "unknown state"),
        ("trans q -> q reset {z}", "unknown clock"),
    ],
)
def test_parse_semantic_errors(line: str, message: str) -> None:
    with pytest.raises(ModelSemanticError, match=message):
        parse_model(f"clocks: x\nautomaton A:\n  state q\n  {line}\n")


def test_parse_syntax_errors() -> None:
    with pytest.raises(ModelSyntaxError):
        parse_model("clocks: x\nautomaton A:\n  state q\n  trans q q\n")
    with pytest.raises(ModelSyntaxError):
        parse_model("clocks: x\nlocation q\n")


def test_parse_shipped_csma_network() -> None:
    model = parse_model(print_model(gen_csma(4, fixed=True)))
    assert isinstance(model, Network)
    assert [c.name for c in model.components] == ["Station1", "Station2", "Station3", "Station4", "Bus"]
    assert model.sync_sets == (frozenset({"cd", "cd_1", "cd_2", "cd_3", "cd_4"}),)


@pytest.mark.parametrize(
    "model",
    [
        gen_csma(2),
        gen_csma(3, fixed=True, nonzeno=True),
        gen_fischer(3),
        gen_train_gate(3),
        gen_fddi(3),
        gen_drifting_loop(),
        gen_property("csma", 4),
        gen_property("csma-collision", 2),
        gen_property("fischer", 3),
        gen_property("fddi", 3),
        gen_property("traingate", 3),
        product(gen_csma(1, fixed=True), gen_property("csma", 1)),
    ],
)
def test_print_parse_round_trip(model: TBA | Network) -> None:
    text = print_model(model)
    assert parse_model(text) == model
    assert print_model(parse_model(text)) == text


def test_lu_bounds_single_lower_guard() -> None:
    a = parse_model("clocks: x\nautomaton A:\n  state q\n  trans q -> q guard x >= 5\n")
    assert isinstance(a, TBA)
    lu = compute_lu_bounds(a)
    assert lu.lower == (0, 5)
    assert lu.upper == (0, NO_BOUND)


def test_lu_bounds_without_guards() -> None:
    a = parse_model("clocks: x, y\nautomaton A:\n  state q\n  trans q -> q\n")
    assert isinstance(a, TBA)
    lu = compute_lu_bounds(a)
    assert lu.lower[1:] == (NO_BOUND, NO_BOUND)
    assert lu.upper[1:] == (NO_BOUND, NO_BOUND)


def test_lu_bounds_of_csma_station() -> None:
    station = gen_csma(1).components[0]
    lu = compute_lu_bounds(station)
    assert lu.upper[1] == 808
    assert lu.lower[1] == 808
    assert 52 in {atom.constant for _, g in station.invariants for atom in g.atoms}


def test_csma_shapes() -> None:
    net = gen_csma(1)
    station, bus = net.components
    assert station.states == ("WAIT", "START", "RETRY")
    assert bus.states == ("IDLE", "BUSY", "COLLISION")


def test_csma_fix_adds_one_busy_loop_per_station() -> None:
    broken = gen_csma(3)
    fixed = gen_csma(3, fixed=True)
    for i, (a, b) in enumerate(zip(broken.components[:3], fixed.components[:3]), start=1):
        extra = set(b.transitions) - set(a.transitions)
        assert len(b.transitions) == len(a.transitions) + 1
        (t,) = extra
        assert (t.src, t.dst, t.label, t.resets) == ("RETRY", "RETRY", f"busy_{i}", frozenset({i}))


def test_csma_nonzeno_slows_down_busy() -> None:
    bus = gen_csma(2, nonzeno=True).components[-1]
    y = len(bus.clocks)
    for t in bus.outgoing("BUSY"):
        assert any(a.clock == y and a.rel is Relation.GE and a.constant == 1 for a in t.guard.atoms)


def test_fischer_property_uses_k_times_n() -> None:
    prop = gen_property("fischer", 3, K=2)
    assert prop.states == ("q0", "q1")
    assert prop.invariant("q0").atoms[0].constant == 15 * 6
    loops = {t.label for t in prop.outgoing("q0") if t.dst == "q0"}
    assert loops == {"req_1", "enter_1"}
    constants = {a.constant for t in prop.transitions for a in t.guard.atoms}
    assert constants == {60, 90, 6}


def test_csma_property_shape() -> None:
    prop = gen_property("csma", 4)
    assert len(prop.states) == 2
    assert prop.accepting == frozenset({prop.initial})
    (atom,) = prop.invariant("q0").atoms
    assert (atom.rel, atom.constant) == (Relation.LE, 130)


def test_fddi_property_chain() -> None:
    prop = gen_property("fddi", 3, SA=20)
    assert len(prop.states) == 4
    chain = [(t.src, t.dst) for t in prop.transitions if t.label.startswith("async_")]
    assert chain == [("q0", "q1"), ("q1", "q2"), ("q2", "q0")]
    assert prop.invariant("q0").atoms[0].constant == 150 * 20 * 3


def test_unknown_property_family() -> None:
    with pytest.raises(ValueError):
        gen_property("dining", 3)


def test_generators_reject_bad_parameters() -> None:
    with pytest.raises(ValueError):
        gen_csma(0)
    with pytest.raises(ValueError):
        gen_fischer(2, K=0)


def test_scale_constants_rounds_up() -> None:
    scaled = scale_constants(gen_csma(2, fixed=True, nonzeno=True), 13)
    assert scaled == gen_csma(2, L=63, S=2, fixed=True, nonzeno=True)
    assert scale_constants(gen_drifting_loop(), 1) == gen_drifting_loop()
    with pytest.raises(ValueError):
        scale_constants(gen_drifting_loop(), 0)


def test_product_with_trivial_property_is_isomorphic() -> None:
    model = gen_drifting_loop()
    trivial = AutomatonBuilder("True", []).state("p", accepting=True).build()
    prod = product(model, trivial)
    assert len(prod.states) == len(model.states)
    assert len(prod.transitions) == len(model.transitions)
    assert prod.accepting == frozenset(prod.states)
    assert prod.clocks == model.clocks


def test_handshake_synchronises_shared_labels_only() -> None:
    a = AutomatonBuilder("A", []).state("a0").state("a1")
    a.trans("a0", "a1", "go").trans("a1", "a0", "back")
    b = AutomatonBuilder("B", []).state("b0").state("b1")
    b.trans("b0", "b1", "go").trans("b1", "b0")
    flat = flatten(Network((), (a.build(), b.build())))
    assert flat.states == ("a0.b0", "a1.b1", "a1.b0", "a0.b1")
    assert len(flat.transitions) == 5
    go = [(t.src, t.dst) for t in flat.transitions if t.label == "go"]
    assert go == [("a0.b0", "a1.b1")]


def test_colliding_product_state_names_are_rejected() -> None:
    a = AutomatonBuilder("A", []).state("x.y").state("x")
    a.trans("x.y", "x", "a")
    b = AutomatonBuilder("B", []).state("z").state("y.z")
    b.trans("z", "y.z", "b")
    with pytest.raises(ModelSemanticError, match="both named 'x.y.z'"):
        flatten(Network((), (a.build(), b.build())))


def test_product_with_property_rejects_colliding_names() -> None:
    model = AutomatonBuilder("M", []).state("q").state("q.p")
    model.trans("q", "q.p", "a")
    prop = AutomatonBuilder("P", []).state("p.p", accepting=True).state("p", accepting=True)
    prop.trans("p.p", "p")
    with pytest.raises(ModelSemanticError, match="both named 'q.p.p'"):
        product(model.build(), prop.build())


def test_sync_set_fires_all_participants() -> None:
    flat = flatten(gen_csma(2))
    collisions = [t for t in flat.transitions if "cd" in t.labels]
    assert collisions
    for t in collisions:
        assert t.labels == frozenset({"cd", "cd_1", "cd_2"})
        assert t.resets == frozenset({1, 2, 3})
        assert t.src.endswith(".COLLISION") and t.dst.endswith(".IDLE")


def test_product_requires_observed_labels() -> None:
    with pytest.raises(ModelSemanticError, match="absent from network"):
        product(gen_fischer(2), gen_property("csma", 2))


def test_product_state_space_of_csma_fixed_1() -> None:
    prod = product(gen_csma(1, fixed=True), gen_property("csma", 1))
    assert 0 < len(prod.states) <= 3 * 3 * 2
    assert prod.clocks == ("x_1", "y", "t1", "t2")
    assert prod.accepting == frozenset(s for s in prod.states if s.endswith(".q0"))


def test_compiled_folds_invariants_into_guards() -> None:
    station = gen_csma(1).components[0]
    compiled = station.compiled()
    assert compiled.invariants == ()
    for t in compiled.outgoing("START"):
        assert station.invariant("START").atoms[0] in t.guard.atoms
