"""Execution engines: two-way configuration-graph search and one-way derivations."""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Optional

from .core import DoubleStrand, WKError, enumerate_lower_strands
from .model import (
    Direction,
    OneWayMachine,
    OneWayTransition,
    StrandRead,
    TwoWayMachine,
    TwoWayTransition,
)


class InapplicableTransitionError(WKError, ValueError):
    pass


class NondeterminismError(WKError):
    pass


class Configuration(NamedTuple):
    state: str
    upper_pos: int
    lower_pos: int


class Outcome(enum.Enum):
    ACCEPT = "ACCEPT"
    REJECT = "REJECT"


class Reason(enum.Enum):
    NO_ACCEPTING_RUN = "NoAcceptingRun"
    LOOP = "Loop"
    HALT = "Halt"
    FELL_OFF_NONFINAL = "FellOffNonFinal"


@dataclass(frozen=True)
class Step:
    configuration: Configuration
    rule: Optional[object] = None  # transition fired to leave this configuration


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    reason: Optional[Reason] = None
    lower: Optional[str] = None  # the chosen lower strand, on Accept
    witness: tuple = ()  # transitions of one accepting run, on Accept

    @property
    def accepted(self) -> bool:
        return self.outcome is Outcome.ACCEPT


@dataclass
class RunReport:
    verdict: Verdict
    explored: int = 0
    per_strand: dict[str, int] = field(default_factory=dict)
    trace: list[Step] = field(default_factory=list)


def _matches(tape, pos: int, read: StrandRead) -> Optional[int]:
    """New head position if `read` succeeds at `pos`, else None."""
    n = len(tape)
    w = read.word
    if not w:
        return pos
    if pos >= n:
        return None
    k = len(w)
    if read.dir is Direction.R:
        if pos + k > n or tuple(w) != tape.cells[pos:pos + k]:
            return None
        return pos + k
    if read.dir is Direction.L:
        if pos - k < 0:
            return None
        for i, c in enumerate(w):
            if tape[pos - i] != c:
                return None
        return pos - k
    return None


def applicable(m: TwoWayMachine, ds: DoubleStrand, c: Configuration) -> list[TwoWayTransition]:
    return [
        t for t in m.transitions
        if t.source == c.state
        and _matches(ds.upper, c.upper_pos, t.upper) is not None
        and _matches(ds.lower, c.lower_pos, t.lower) is not None
    ]


def _successors(m, ds, c) -> Iterator[tuple[TwoWayTransition, Configuration]]:
    for t in m.transitions:
        if t.source != c.state:
            continue
        up = _matches(ds.upper, c.upper_pos, t.upper)
        if up is None:
            continue
        low = _matches(ds.lower, c.lower_pos, t.lower)
        if low is None:
            continue
        yield t, Configuration(t.target, up, low)


def step(ds: DoubleStrand, c: Configuration, t: TwoWayTransition) -> Configuration:
    if t.source != c.state:
        raise InapplicableTransitionError(f"{t} does not leave state {c.state}")
    up = _matches(ds.upper, c.upper_pos, t.upper)
    low = _matches(ds.lower, c.lower_pos, t.lower)
    if up is None or low is None:
        raise InapplicableTransitionError(f"{t} is not applicable at {c}")
    return Configuration(t.target, up, low)


def initial_configuration(m: TwoWayMachine) -> Configuration:
    return Configuration(m.initial, 0, 0)


def is_accepting(m: TwoWayMachine, ds: DoubleStrand, c: Configuration) -> bool:
    n = len(ds)
    return c.state in m.finals and c.upper_pos == n and c.lower_pos == n


def configuration_bound(m: TwoWayMachine, ds: DoubleStrand) -> int:
    return len(m.states) * (len(ds) + 1) ** 2


def reachable(m: TwoWayMachine, ds: DoubleStrand) -> set[Configuration]:
    """All configurations reachable from the initial one on a fixed double tape."""
    start = initial_configuration(m)
    seen = {start}
    todo = deque([start])
    while todo:
        c = todo.popleft()
        for _, nxt in _successors(m, ds, c):
            if nxt not in seen:
                seen.add(nxt)
                todo.append(nxt)
    return seen


def _search(m: TwoWayMachine, ds: DoubleStrand):
    """BFS from the initial configuration; returns (accepting path or None, explored)."""
    start = initial_configuration(m)
    parent: dict[Configuration, Optional[tuple[Configuration, TwoWayTransition]]] = {start: None}
    todo = deque([start])
    while todo:
        c = todo.popleft()
        if is_accepting(m, ds, c):
            path = []
            while parent[c] is not None:
                prev, t = parent[c]
                path.append(Step(prev, t))
                c = prev
            path.reverse()
            return path, len(parent)
        for t, nxt in _successors(m, ds, c):
            if nxt not in parent:
                parent[nxt] = (c, t)
                todo.append(nxt)
    assert len(parent) <= configuration_bound(m, ds)
    return None, len(parent)


def run_two_way(m: TwoWayMachine, upper_word: str) -> RunReport:
    """Search every complementary lower strand, stopping at the first acceptance."""
    m.alphabet.check_word(upper_word)
    report = RunReport(Verdict(Outcome.REJECT, Reason.NO_ACCEPTING_RUN))
    for lower in enumerate_lower_strands(m.rho, upper_word):
        ds = DoubleStrand.from_words(upper_word, lower)
        path, explored = _search(m, ds)
        assert explored <= configuration_bound(m, ds)
        report.per_strand[lower] = explored
        report.explored += explored
        if path is not None:
            n = len(ds)
            last = path[-1].rule.target if path else m.initial
            report.trace = path + [Step(Configuration(last, n, n))]
            report.verdict = Verdict(Outcome.ACCEPT, None, lower, tuple(s.rule for s in path))
            break
    return report


def accepts_two_way(m: TwoWayMachine, upper_word: str) -> Verdict:
    return run_two_way(m, upper_word).verdict


def replay(m: TwoWayMachine, upper_word: str, lower: str, rules) -> Configuration:
    """Fire `rules` in order from the initial configuration; raises if one is inapplicable."""
    ds = DoubleStrand.from_words(upper_word, lower)
    c = initial_configuration(m)
    for t in rules:
        c = step(ds, c, t)
    return c


def trace_deterministic(m: TwoWayMachine, upper_word: str) -> RunReport:
    """Follow the single run of a deterministic machine, classifying how it ends."""
    m.alphabet.check_word(upper_word)
    lowers = list(enumerate_lower_strands(m.rho, upper_word))
    if len(lowers) > 1:
        raise NondeterminismError(
            f"{len(lowers)} complementary lower strands for {upper_word!r}; a single run needs exactly one"
        )
    if not lowers:
        return RunReport(Verdict(Outcome.REJECT, Reason.NO_ACCEPTING_RUN))
    lower = lowers[0]
    ds = DoubleStrand.from_words(upper_word, lower)
    n = len(ds)
    c = initial_configuration(m)
    seen = set()
    trace: list[Step] = []
    fired: list[TwoWayTransition] = []
    while True:
        if is_accepting(m, ds, c):
            trace.append(Step(c))
            verdict = Verdict(Outcome.ACCEPT, None, lower, tuple(fired))
            break
        if c in seen:
            trace.append(Step(c))
            verdict = Verdict(Outcome.REJECT, Reason.LOOP, lower)
            break
        seen.add(c)
        options = applicable(m, ds, c)
        if len(options) > 1:
            raise NondeterminismError(f"{len(options)} transitions applicable at {c}")
        if not options:
            trace.append(Step(c))
            both_off = c.upper_pos == n and c.lower_pos == n
            verdict = Verdict(Outcome.REJECT, Reason.FELL_OFF_NONFINAL if both_off else Reason.HALT, lower)
            break
        t = options[0]
        trace.append(Step(c, t))
        fired.append(t)
        c = step(ds, c, t)
    return RunReport(verdict, len(seen) + 1, {lower: len(seen) + 1}, trace)


# -- one-way -------------------------------------------------------------------


class OneWayState(NamedTuple):
    state: str
    upper_used: int
    lower_used: int


def _derive(m: OneWayMachine, upper: str, lower: str):
    start = OneWayState(m.initial, 0, 0)
    parent: dict[OneWayState, Optional[tuple[OneWayState, OneWayTransition]]] = {start: None}
    todo = deque([start])
    while todo:
        c = todo.popleft()
        if c.state in m.finals and c.upper_used == len(upper) and c.lower_used == len(lower):
            path = []
            while parent[c] is not None:
                prev, t = parent[c]
                path.append(t)
                c = prev
            return path[::-1], len(parent)
        for t in m.transitions:
            if t.source != c.state:
                continue
            if not upper.startswith(t.upper, c.upper_used) or not lower.startswith(t.lower, c.lower_used):
                continue
            nxt = OneWayState(t.target, c.upper_used + len(t.upper), c.lower_used + len(t.lower))
            if nxt not in parent:
                parent[nxt] = (c, t)
                todo.append(nxt)
    return None, len(parent)


def run_one_way(m: OneWayMachine, upper_word: str) -> RunReport:
    m.alphabet.check_word(upper_word)
    report = RunReport(Verdict(Outcome.REJECT, Reason.NO_ACCEPTING_RUN))
    for lower in enumerate_lower_strands(m.rho, upper_word):
        path, explored = _derive(m, upper_word, lower)
        report.per_strand[lower] = explored
        report.explored += explored
        if path is not None:
            report.verdict = Verdict(Outcome.ACCEPT, None, lower, tuple(path))
            break
    return report


def accepts_one_way(m: OneWayMachine, upper_word: str) -> Verdict:
    return run_one_way(m, upper_word).verdict


def accepts(m, upper_word: str) -> Verdict:
    if isinstance(m, OneWayMachine):
        return accepts_one_way(m, upper_word)
    return accepts_two_way(m, upper_word)
