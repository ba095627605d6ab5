from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Tuple, Union

from .._constants import LOGGER_NAME, TAU
from .._guards import Atom, Guard, Relation
from ._automaton import TBA, Network, Transition
from ._errors import ModelSemanticError, ModelSyntaxError

logger = logging.getLogger(LOGGER_NAME)

Model = Union[TBA, Network]

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>!?[A-Za-z_][A-Za-z0-9_.|]*)|(?P<op>->|<=|>=|==|&&|[<>{},:\-+=]))"
)
_RELATIONS = {r.value: r for r in Relation}
_KEYWORDS = frozenset(
    {"clocks", "automaton", "state", "trans", "sync", "accepting", "invariant", "guard", "reset", "label"}
)


@dataclass
class _Token:
    kind: str
    text: str
    column: int


@dataclass
class _Draft:
    name: str
    line: int
    states: List[str] = field(default_factory=list)
    accepting: List[str] = field(default_factory=list)
    invariants: List[Tuple[str, Guard]] = field(default_factory=list)
    transitions: List[Tuple[int, Transition]] = field(default_factory=list)


def _tokenize(text: str, line: int) -> List[_Token]:
    tokens: List[_Token] = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None or match.end() == pos:
            column = pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
            raise ModelSyntaxError(f"unexpected character {text[column - 1]!r}", line, column)
        kind = match.lastgroup or "op"
        value = match.group(kind)
        tokens.append(_Token(kind, value, match.start(kind) + 1))
        pos = match.end()
    return tokens


class _LineParser:
    def __init__(self, tokens: List[_Token], line: int, clocks: Dict[str, int]) -> None:
        self.tokens = tokens
        self.line = line
        self.clocks = clocks
        self.pos = 0

    def peek(self) -> Optional[_Token]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def at_end(self) -> bool:
        return self.pos >= len(self.tokens)

    def error(self, message: str) -> ModelSyntaxError:
        token = self.peek()
        if token is not None:
            return ModelSyntaxError(message, self.line, token.column)
        last = self.tokens[-1]
        return ModelSyntaxError(message, self.line, last.column + len(last.text))

    def take(self, kind: str, text: Optional[str] = None) -> _Token:
        token = self.peek()
        if token is None or token.kind != kind or (text is not None and token.text != text):
            expected = repr(text) if text is not None else kind
            found = "end of line" if token is None else repr(token.text)
            raise self.error(f"expected {expected}, found {found}")
        self.pos += 1
        return token

    def accept(self, kind: str, text: Optional[str] = None) -> bool:
        token = self.peek()
        if token is not None and token.kind == kind and (text is None or token.text == text):
            self.pos += 1
            return True
        return False

    def identifier(self, what: str) -> str:
        token = self.take("name")
        if token.text.startswith("!"):
            raise ModelSyntaxError(f"{what} names cannot start with '!'", self.line, token.column)
        return token.text

    def finish(self) -> None:
        if not self.at_end():
            raise self.error("unexpected trailing input")

    def clock(self) -> int:
        token = self.take("name")
        if token.text not in self.clocks:
            raise ModelSemanticError(f"unknown clock {token.text!r}", self.line)
        return self.clocks[token.text]

    def atom(self) -> Atom:
        clock = self.clock()
        if self.accept("op", "-"):
            raise ModelSemanticError("diagonal constraints unsupported", self.line)
        token = self.peek()
        if token is None or token.text not in _RELATIONS:
            raise self.error("expected a comparison")
        self.pos += 1
        if self.accept("op", "-"):
            raise ModelSemanticError("negative constant in guard", self.line)
        constant = int(self.take("num").text)
        return Atom(clock, _RELATIONS[token.text], constant)

    def conjunction(self) -> Guard:
        atoms = [self.atom()]
        while self.accept("op", "&&"):
            atoms.append(self.atom())
        return Guard.of(atoms)

    def name_set(self, what: str) -> List[str]:
        self.take("op", "{")
        names: List[str] = []
        if not self.accept("op", "}"):
            names.append(self.take("name").text)
            while self.accept("op", ","):
                names.append(self.take("name").text)
            self.take("op", "}")
        if what != "label" and any(n.startswith("!") for n in names):
            raise self.error(f"{what} names cannot start with '!'")
        return names


def parse_model(text: str) -> Model:
    """Parse the textual model format.

    Returns a :class:`TBA` for a single automaton without sync sets, a :class:`Network` otherwise.
    Raises :class:`ModelSyntaxError` or :class:`ModelSemanticError`.
    """
    clocks: Optional[Dict[str, int]] = None
    drafts: List[_Draft] = []
    sync_sets: List[FrozenSet[str]] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0]
        tokens = _tokenize(content, number)
        if not tokens:
            continue
        p = _LineParser(tokens, number, clocks or {})
        head = p.take("name").text
        if head == "clocks":
            if clocks is not None:
                raise ModelSemanticError("clocks declared twice", number)
            if drafts:
                raise ModelSemanticError("clocks must be declared before the first automaton", number)
            p.take("op", ":")
            names: List[str] = []
            if not p.at_end():
                names.append(p.identifier("clock"))
                while p.accept("op", ","):
                    names.append(p.identifier("clock"))
            p.finish()
            if len(set(names)) != len(names):
                raise ModelSemanticError("duplicate clock name", number)
            clocks = {name: i for i, name in enumerate(names, start=1)}
        elif head == "automaton":
            name = p.identifier("automaton")
            p.take("op", ":")
            p.finish()
            drafts.append(_Draft(name, number))
        elif head == "sync":
            labels = p.name_set("label")
            p.finish()
            if len(labels) < 2:
                raise ModelSemanticError("a sync set needs at least two labels", number)
            sync_sets.append(frozenset(labels))
        elif head in ("state", "trans"):
            if not drafts:
                raise ModelSemanticError(f"{head} outside of an automaton", number)
            draft = drafts[-1]
            if head == "state":
                _state_line(p, draft)
            else:
                draft.transitions.append((number, _trans_line(p)))
        else:
            raise ModelSyntaxError(f"unknown declaration {head!r}", number, tokens[0].column)
    if not drafts:
        raise ModelSemanticError("no automaton declared")
    clock_names = tuple(clocks or {})
    components = tuple(_build(draft, clock_names) for draft in drafts)
    logger.debug("parsed %d automata over %d clocks", len(components), len(clock_names))
    if len(components) == 1 and not sync_sets:
        return components[0]
    return Network(clock_names, components, tuple(sync_sets))


def _state_line(p: _LineParser, draft: _Draft) -> None:
    state = p.identifier("state")
    if state in _KEYWORDS:
        raise p.error(f"{state!r} is reserved")
    if state in draft.states:
        raise ModelSemanticError(f"state {state!r} declared twice in automaton {draft.name}", p.line)
    draft.states.append(state)
    if p.accept("name", "accepting"):
        draft.accepting.append(state)
    if p.accept("name", "invariant"):
        draft.invariants.append((state, p.conjunction()))
    p.finish()


def _trans_line(p: _LineParser) -> Transition:
    src = p.identifier("state")
    p.take("op", "->")
    dst = p.identifier("state")
    guard = Guard.true()
    resets: FrozenSet[int] = frozenset()
    label = TAU
    if p.accept("name", "guard"):
        guard = p.conjunction()
    if p.accept("name", "reset"):
        names = p.name_set("clock")
        unknown = [n for n in names if n not in p.clocks]
        if unknown:
            raise ModelSemanticError(f"unknown clock {unknown[0]!r}", p.line)
        resets = frozenset(p.clocks[n] for n in names)
    if p.accept("name", "label"):
        label = p.take("name").text
    p.finish()
    return Transition(src, dst, guard, resets, label)


def _build(draft: _Draft, clocks: Tuple[str, ...]) -> TBA:
    if not draft.states:
        raise ModelSemanticError(f"automaton {draft.name} has no state", draft.line)
    declared = set(draft.states)
    for line, t in draft.transitions:
        for state in (t.src, t.dst):
            if state not in declared:
                raise ModelSemanticError(f"unknown state {state!r}", line)
    return TBA(
        name=draft.name,
        clocks=clocks,
        states=tuple(draft.states),
        transitions=tuple(t for _, t in draft.transitions),
        accepting=frozenset(draft.accepting),
        invariants=tuple(draft.invariants),
    )


def print_model(model: Model) -> str:
    """Inverse of :func:`parse_model`; the output is stable for a given model."""
    clocks = model.clocks
    components = model.components if isinstance(model, Network) else (model,)
    lines = ["clocks: " + ", ".join(clocks) if clocks else "clocks:"]
    for component in components:
        lines.append("")
        lines.append(f"automaton {component.name}:")
        for state in component.states:
            parts = [f"  state {state}"]
            if state in component.accepting:
                parts.append("accepting")
            invariant = component.invariant(state)
            if invariant:
                parts.append(f"invariant {invariant.render(clocks)}")
            lines.append(" ".join(parts))
        for t in component.transitions:
            parts = [f"  trans {t.src} -> {t.dst}"]
            if t.guard:
                parts.append(f"guard {t.guard.render(clocks)}")
            if t.resets:
                parts.append("reset {" + ", ".join(clocks[x - 1] for x in sorted(t.resets)) + "}")
            if t.label != TAU:
                parts.append(f"label {t.label}")
            lines.append(" ".join(parts))
    if isinstance(model, Network) and model.sync_sets:
        lines.append("")
        for labels in model.sync_sets:
            lines.append("sync {" + ", ".join(sorted(labels)) + "}")
    return "\n".join(lines) + "\n"
