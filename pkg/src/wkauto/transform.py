"""Compile a two-way WK machine into an all-final one accepting the same language.

In an all-final machine every run with both heads off the tape accepts, so
the construction has to stop the copy from letting its heads fall off
wherever the original would fall off into a non-final state. It does this by
withholding the last `$` of each such read:

* both heads would fall off into a non-final state: read everything but the
  `$` markers and enter a dead state with no rules;
* one head would fall off into a non-final state: leave that head on its `$`
  and continue in a *shadow* copy of the target (``q_us`` for the upper head,
  ``q_ls`` for the lower). A shadow runs only the original rules that read
  nothing on the withheld strand. When the other head later falls off into a
  final state, the shadow reads the withheld `$` in the same step so both
  heads leave together; into a non-final state it goes dead instead.

A stripped read that ends up empty on both strands would be a λ/λ rule. Such
a rule into a shadow is folded: its source inherits the shadow's rules. Such
a rule into the dead state is dropped, since a branch with no continuation
and no rule behave the same.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .core import RIGHT_MARKER, WKError
from .model import (
    StrandRead,
    TransitionClass,
    TwoWayMachine,
    TwoWayTransition,
    classify_transition,
    fresh_name,
)

UPPER, LOWER = "upper", "lower"


class LambdaLambdaError(WKError, ValueError):
    pass


@dataclass(frozen=True)
class StateCopies:
    plain: str
    upper_shadow: Optional[str] = None
    lower_shadow: Optional[str] = None


@dataclass
class LedgerEntry:
    original: Optional[TwoWayTransition]
    label: str
    emitted: list[TwoWayTransition] = field(default_factory=list)
    note: str = ""

    def __str__(self) -> str:
        head = f"{self.original}: {self.label}" if self.original else self.label
        lines = [head + (f" ({self.note})" if self.note else "")]
        lines += [f"    -> {t}" for t in self.emitted]
        return "\n".join(lines)


@dataclass(frozen=True)
class AllFinalResult:
    machine: TwoWayMachine
    state_map: dict[str, StateCopies]
    dead: Optional[str]
    ledger: tuple[LedgerEntry, ...] = ()


def strip_marker(read: StrandRead) -> StrandRead:
    """Drop a trailing `$` from a falling read; an emptied read becomes stationary."""
    assert read.falls
    return StrandRead.of(read.word[: -len(RIGHT_MARKER)])


LAMBDA_READ = StrandRead.of("")
MARKER_READ = StrandRead.of(RIGHT_MARKER, "R")


class _Builder:
    def __init__(self, m: TwoWayMachine):
        self.m = m
        self.taken = set(m.states)
        self.shadows: dict[tuple[str, str], str] = {}
        self.pending: deque[tuple[str, str]] = deque()
        self.dead: Optional[str] = None
        self.rules: list[TwoWayTransition] = []
        self.ledger: list[LedgerEntry] = []

    def shadow(self, q: str, side: str) -> str:
        key = (q, side)
        if key not in self.shadows:
            name = fresh_name(f"{q}_{'us' if side == UPPER else 'ls'}", self.taken)
            self.taken.add(name)
            self.shadows[key] = name
            self.pending.append(key)
        return self.shadows[key]

    def dead_state(self) -> str:
        if self.dead is None:
            self.dead = fresh_name("dead", self.taken)
            self.taken.add(self.dead)
        return self.dead

    def emit(self, entry: LedgerEntry, source, upper, lower, target) -> None:
        t = TwoWayTransition(source, upper, lower, target)
        if t.is_lambda_lambda and target == self.dead:
            entry.note = "stripped to λ/λ into the dead state; dropped"
            return
        entry.emitted.append(t)
        self.rules.append(t)

    def original_rule(self, t: TwoWayTransition) -> None:
        cls = classify_transition(t)
        final = t.target in self.m.finals
        if cls in (TransitionClass.CLASS1, TransitionClass.CLASS5):
            entry = LedgerEntry(t, f"{cls}, copied")
            self.emit(entry, t.source, t.upper, t.lower, t.target)
        elif final:
            entry = LedgerEntry(t, f"{cls}, case 1 (target final), copied")
            self.emit(entry, t.source, t.upper, t.lower, t.target)
        elif cls is TransitionClass.CLASS2:
            entry = LedgerEntry(t, f"{cls}, case 2 (target non-final), redirected to dead")
            self.emit(entry, t.source, strip_marker(t.upper), strip_marker(t.lower), self.dead_state())
        elif cls is TransitionClass.CLASS3:
            entry = LedgerEntry(t, f"{cls}, case 2 (target non-final), upper head held on $")
            self.emit(entry, t.source, strip_marker(t.upper), t.lower, self.shadow(t.target, UPPER))
        else:
            entry = LedgerEntry(t, f"{cls}, case 2 (target non-final), lower head held on $")
            self.emit(entry, t.source, t.upper, strip_marker(t.lower), self.shadow(t.target, LOWER))
        self.ledger.append(entry)

    def close_shadow(self, q: str, side: str) -> None:
        me = self.shadows[(q, side)]
        for t in self.m.outgoing(q):
            held, other = (t.upper, t.lower) if side == UPPER else (t.lower, t.upper)
            if not held.is_lambda:
                continue

            def place(held_read, other_read):
                return (held_read, other_read) if side == UPPER else (other_read, held_read)

            if not other.falls:
                entry = LedgerEntry(t, f"shadow rule for {me}")
                self.emit(entry, me, *place(LAMBDA_READ, other), self.shadow(t.target, side))
            elif t.target in self.m.finals:
                entry = LedgerEntry(t, f"shadow rule for {me}", note="withheld $ read now")
                self.emit(entry, me, *place(MARKER_READ, other), t.target)
            else:
                entry = LedgerEntry(t, f"shadow rule for {me}", note="would fall off non-final")
                self.emit(entry, me, *place(LAMBDA_READ, strip_marker(other)), self.dead_state())
            self.ledger.append(entry)

    def fold_lambda_lambda(self) -> None:
        by_source: dict[str, list[TwoWayTransition]] = {}
        for t in self.rules:
            by_source.setdefault(t.source, []).append(t)
        out = []
        for t in self.rules:
            if not t.is_lambda_lambda:
                out.append(t)
                continue
            inherited = by_source.get(t.target, [])
            # shadow rules always read on the strand that is not withheld
            assert not any(u.is_lambda_lambda for u in inherited)
            moved = [TwoWayTransition(t.source, u.upper, u.lower, u.target) for u in inherited]
            self.ledger.append(LedgerEntry(t, f"λ/λ rule folded: {t.source} inherits the rules of {t.target}", moved))
            out.extend(moved)
        self.rules = list(dict.fromkeys(out))


def _reachable(initial: str, rules) -> set[str]:
    seen = {initial}
    todo = deque([initial])
    while todo:
        p = todo.popleft()
        for t in rules:
            if t.source == p and t.target not in seen:
                seen.add(t.target)
                todo.append(t.target)
    return seen


def to_all_final(m: TwoWayMachine, prune: bool = True) -> AllFinalResult:
    if any(t.is_lambda_lambda for t in m.transitions):
        raise LambdaLambdaError("machine has λ/λ rules; run eliminate_lambda_lambda first")
    b = _Builder(m)
    for t in m.transitions:
        b.original_rule(t)
    while b.pending:
        b.close_shadow(*b.pending.popleft())
    b.fold_lambda_lambda()

    extra = list(b.shadows.values()) + ([b.dead] if b.dead else [])
    rules = b.rules
    if prune:
        live = _reachable(m.initial, rules)
        dropped = {q for q in extra if q not in live}
        extra = [q for q in extra if q not in dropped]
        rules = [t for t in rules if t.source not in dropped and t.target not in dropped]
    kept = set(extra)
    dead = b.dead if b.dead in kept else None

    states = tuple(m.states) + tuple(extra)
    machine = TwoWayMachine(m.alphabet, m.rho, states, m.initial, frozenset(states), tuple(rules))
    state_map = {}
    for q in m.states:
        us, ls = b.shadows.get((q, UPPER)), b.shadows.get((q, LOWER))
        state_map[q] = StateCopies(q, us if us in kept else None, ls if ls in kept else None)
    return AllFinalResult(machine, state_map, dead, tuple(b.ledger))


def explain_construction(m: TwoWayMachine) -> str:
    result = to_all_final(m)
    lines = [str(e) for e in result.ledger]
    created = [q for q in result.machine.states if q not in m.states]
    lines.append("new states: " + (" ".join(created) if created else "(none)"))
    return "\n".join(lines)
