"""Machine descriptions for one-way and two-way Watson-Crick automata.

Read semantics for two-way machines: a head at cell ``p`` doing an R-read of
``c1..ck`` needs ``tape[p:p+k] == c1..ck`` and ends at ``p+k``; an L-read
needs ``tape[p] == c1, tape[p-1] == c2, ...`` (symbols in the order the head
meets them) and ends at ``p-k``. A head at ``len(tape)`` has fallen off the
right end and only performs empty reads from then on.
"""

from __future__ import annotations

import enum
import itertools
from collections import deque
from dataclasses import dataclass, replace
from typing import Iterable, Optional, Union

from .core import (
    LEFT_MARKER,
    RIGHT_MARKER,
    Alphabet,
    ComplementarityRelation,
    prefix_comparable,
)

LAMBDA = ""


class Direction(enum.Enum):
    L = "L"
    R = "R"
    S = "0"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True, order=True)
class StrandRead:
    word: str
    dir: Direction

    @classmethod
    def of(cls, word: str, dir: Union[Direction, str, None] = None) -> StrandRead:
        """Build a read; the direction defaults to R, or S for the empty word."""
        if dir is None:
            dir = Direction.S if word == LAMBDA else Direction.R
        elif not isinstance(dir, Direction):
            dir = Direction(dir)
        return cls(word, dir)

    @property
    def is_lambda(self) -> bool:
        return self.word == LAMBDA

    @property
    def falls(self) -> bool:
        """R-read ending in `$`: the head leaves the tape on the right."""
        return self.dir is Direction.R and self.word.endswith(RIGHT_MARKER)

    @property
    def reads_marker_leftward(self) -> bool:
        return self.dir is Direction.L and self.word.startswith(RIGHT_MARKER)

    def __str__(self) -> str:
        return f"({self.word or '_'},{self.dir})"


def _sort_key_read(r: StrandRead) -> tuple[str, str]:
    return (r.word, r.dir.value)


@dataclass(frozen=True)
class TwoWayTransition:
    source: str
    upper: StrandRead
    lower: StrandRead
    target: str

    @property
    def is_lambda_lambda(self) -> bool:
        return self.upper.is_lambda and self.lower.is_lambda

    def __str__(self) -> str:
        return f"{self.source} {self.upper}{self.lower} {self.target}"


@dataclass(frozen=True)
class OneWayTransition:
    source: str
    upper: str
    lower: str
    target: str

    def __str__(self) -> str:
        return f"{self.source} ({self.upper or '_'})({self.lower or '_'}) {self.target}"


def rule(source: str, upper, lower, target: str) -> TwoWayTransition:
    """Shorthand: ``rule("q", ("a", "R"), ("", "0"), "p")``; a bare string is an R-read (or S if empty)."""

    def as_read(x) -> StrandRead:
        if isinstance(x, StrandRead):
            return x
        if isinstance(x, str):
            return StrandRead.of(x)
        return StrandRead.of(*x)

    return TwoWayTransition(source, as_read(upper), as_read(lower), target)


@dataclass(frozen=True)
class _MachineBase:
    alphabet: Alphabet
    rho: ComplementarityRelation
    states: tuple[str, ...]
    initial: str
    finals: frozenset[str]

    def __post_init__(self) -> None:
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "finals", frozenset(self.finals))
        object.__setattr__(self, "transitions", tuple(self.transitions))

    def outgoing(self, state: str):
        return [t for t in self.transitions if t.source == state]

    def _sort_key(self, t):
        order = {q: i for i, q in enumerate(self.states)}
        return (order.get(t.source, len(order)), t.source)

    def canonical(self):
        """The same machine with transitions in file-serialization order."""
        return replace(self, transitions=tuple(sorted(self.transitions, key=self._sort_key)))


@dataclass(frozen=True)
class TwoWayMachine(_MachineBase):
    transitions: tuple[TwoWayTransition, ...] = ()

    def _sort_key(self, t: TwoWayTransition):
        order = {q: i for i, q in enumerate(self.states)}
        return (
            *super()._sort_key(t),
            _sort_key_read(t.upper),
            _sort_key_read(t.lower),
            order.get(t.target, len(order)),
            t.target,
        )


@dataclass(frozen=True)
class OneWayMachine(_MachineBase):
    transitions: tuple[OneWayTransition, ...] = ()

    def _sort_key(self, t: OneWayTransition):
        order = {q: i for i, q in enumerate(self.states)}
        return (*super()._sort_key(t), t.upper, t.lower, order.get(t.target, len(order)), t.target)


Machine = Union[TwoWayMachine, OneWayMachine]


# -- validation ---------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    message: str
    transition: Optional[int] = None  # index into machine.transitions

    def __str__(self) -> str:
        if self.transition is None:
            return self.message
        return f"transition {self.transition}: {self.message}"


def read_violations(read: StrandRead, alphabet: Alphabet) -> list[str]:
    out = []
    w, d = read.word, read.dir
    if w == LAMBDA and d is not Direction.S:
        out.append("λ read requires direction 0")
    if w != LAMBDA and d is Direction.S:
        out.append("non-empty read requires direction L or R")
    for s in w:
        if s not in alphabet and s not in (LEFT_MARKER, RIGHT_MARKER):
            out.append(f"unknown symbol {s!r}")
    if d is Direction.L and w.endswith(LEFT_MARKER):
        out.append("L-read ends with #")
    for i, s in enumerate(w):
        if s == LEFT_MARKER:
            if d is Direction.L and i == len(w) - 1:
                continue  # reported above
            if not (d is Direction.R and i == 0):
                out.append("'#' may only start an R-read")
        elif s == RIGHT_MARKER:
            ok = (d is Direction.R and i == len(w) - 1) or (d is Direction.L and i == 0)
            if not ok:
                out.append("'$' may only end an R-read or start an L-read")
    return out


def _state_violations(m: Machine) -> list[Violation]:
    out = []
    known = set(m.states)
    if len(known) != len(m.states):
        out.append(Violation("duplicate state names"))
    if m.initial not in known:
        out.append(Violation(f"initial state {m.initial!r} is not declared"))
    for q in sorted(m.finals - known):
        out.append(Violation(f"final state {q!r} is not declared"))
    for i, t in enumerate(m.transitions):
        for q in (t.source, t.target):
            if q not in known:
                out.append(Violation(f"unknown state {q!r}", i))
    return out


def validate(m: TwoWayMachine, allow_lambda_lambda: bool = False) -> list[Violation]:
    """All structural problems of a two-way machine; empty means valid."""
    out = _state_violations(m)
    for i, t in enumerate(m.transitions):
        for r in (t.upper, t.lower):
            out.extend(Violation(msg, i) for msg in read_violations(r, m.alphabet))
        if t.is_lambda_lambda and not allow_lambda_lambda:
            out.append(Violation("λ/λ transition", i))
    return out


def validate_one_way(m: OneWayMachine) -> list[Violation]:
    out = _state_violations(m)
    for i, t in enumerate(m.transitions):
        for w in (t.upper, t.lower):
            for s in w:
                if s not in m.alphabet:
                    out.append(Violation(f"unknown symbol {s!r}", i))
    return out


# -- classification -----------------------------------------------------------


@dataclass(frozen=True)
class SubclassFlags:
    stateless: bool
    all_final: bool
    simple: bool
    one_limited: bool


def classify_subclass(m: TwoWayMachine) -> SubclassFlags:
    states = set(m.states)
    return SubclassFlags(
        stateless=states == set(m.finals) == {m.initial},
        all_final=states == set(m.finals),
        simple=all(t.upper.is_lambda or t.lower.is_lambda for t in m.transitions),
        # markers count toward the read length
        one_limited=all(len(t.upper.word) + len(t.lower.word) == 1 for t in m.transitions),
    )


class TransitionClass(enum.IntEnum):
    CLASS1 = 1  # no head falls off, no leftward `$` read
    CLASS2 = 2  # both heads fall off
    CLASS3 = 3  # only the upper head falls off
    CLASS4 = 4  # only the lower head falls off
    CLASS5 = 5  # leftward read starting at `$`, nobody falls

    def __str__(self) -> str:
        return f"Class{self.value}"


def classify_transition(t: TwoWayTransition) -> TransitionClass:
    up, low = t.upper.falls, t.lower.falls
    if up and low:
        return TransitionClass.CLASS2
    if up:
        return TransitionClass.CLASS3
    if low:
        return TransitionClass.CLASS4
    if t.upper.reads_marker_leftward or t.lower.reads_marker_leftward:
        return TransitionClass.CLASS5
    return TransitionClass.CLASS1


# -- determinism --------------------------------------------------------------


def _same_source_pairs(transitions):
    for t, u in itertools.combinations(transitions, 2):
        if t.source == u.source and t != u:
            yield t, u


def is_deterministic(m: OneWayMachine):
    """Prefix-comparability test; returns ``(True, None)`` or ``(False, (t, t'))``."""
    for t, u in _same_source_pairs(m.transitions):
        if prefix_comparable(t.upper, u.upper) and prefix_comparable(t.lower, u.lower):
            return False, (t, u)
    return True, None


def reads_conflict(r: StrandRead, s: StrandRead) -> bool:
    """Could both reads succeed from the same head position?"""
    if r.is_lambda or s.is_lambda:
        return True
    if r.dir is s.dir:
        return prefix_comparable(r.word, s.word)
    # opposite directions agree only on the cell under the head
    return r.word[0] == s.word[0]


def is_deterministic_two_way(m: TwoWayMachine):
    """Sufficient syntactic condition: no same-source pair conflicts on both strands."""
    for t, u in _same_source_pairs(m.transitions):
        if reads_conflict(t.upper, u.upper) and reads_conflict(t.lower, u.lower):
            return False, (t, u)
    return True, None


# -- λ/λ elimination ----------------------------------------------------------


def fresh_name(base: str, taken: Iterable[str]) -> str:
    taken = set(taken)
    name, n = base, 1
    while name in taken:
        n += 1
        name = f"{base}{n}"
    return name


def lambda_closure(m: TwoWayMachine, q: str) -> set[str]:
    seen = {q}
    todo = deque([q])
    while todo:
        p = todo.popleft()
        for t in m.transitions:
            if t.source == p and t.is_lambda_lambda and t.target not in seen:
                seen.add(t.target)
                todo.append(t.target)
    return seen


def eliminate_lambda_lambda(m: TwoWayMachine) -> TwoWayMachine:
    if not any(t.is_lambda_lambda for t in m.transitions):
        return m
    closure = {q: lambda_closure(m, q) for q in m.states}
    order = {q: i for i, q in enumerate(m.states)}

    def ordered(qs):
        return sorted(qs, key=order.__getitem__)

    rules: list[TwoWayTransition] = []
    for t in m.transitions:
        if t.is_lambda_lambda:
            continue
        for r in ordered(closure[t.target]):
            rules.append(replace(t, target=r))
    rules = list(dict.fromkeys(rules))

    finals = {q for q in m.states if closure[q] & m.finals}
    states = list(m.states)
    initial = m.initial
    if closure[initial] != {initial}:
        initial = fresh_name(f"{m.initial}_init", states)
        states.insert(0, initial)
        if closure[m.initial] & m.finals:
            finals.add(initial)
        base = list(rules)
        for q in ordered(closure[m.initial]):
            rules.extend(replace(t, source=initial) for t in base if t.source == q)
        rules = list(dict.fromkeys(rules))
    return replace(m, states=tuple(states), initial=initial, finals=frozenset(finals),
                   transitions=tuple(rules))
