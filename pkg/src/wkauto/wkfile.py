"""The line-oriented `.wk` machine file format.

    wk-automaton v1
    mode: two-way
    alphabet: a b
    complement: a~a b~b
    states: q0 q1
    initial: q0
    final: q1
    trans: q0 (#,R)(#,R) q1

`_` is the empty word, `0` the stationary direction, `;` starts a comment.
One-way rules omit directions: ``trans: q0 (a)(_) q1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Union

from .core import MARKERS, Alphabet, ComplementarityRelation, WKError
from .model import (
    Direction,
    OneWayMachine,
    OneWayTransition,
    StrandRead,
    TwoWayMachine,
    TwoWayTransition,
    Violation,
    validate,
    validate_one_way,
)

HEADER = "wk-automaton v1"
KEYS = ("mode", "alphabet", "complement", "states", "initial", "final")
MODES = ("one-way", "two-way")
LAMBDA_TOKEN = "_"

_NAME = r"[^\s(),;]+"
_WORD = r"[^\s(),;]+"
_TWO_WAY = re.compile(
    rf"(?P<src>{_NAME})\s+\((?P<uw>{_WORD}),(?P<ud>{_WORD})\)\s*"
    rf"\((?P<lw>{_WORD}),(?P<ld>{_WORD})\)\s+(?P<dst>{_NAME})$"
)
_ONE_WAY = re.compile(rf"(?P<src>{_NAME})\s+\((?P<uw>{_WORD})\)\s*\((?P<lw>{_WORD})\)\s+(?P<dst>{_NAME})$")
_STATE = re.compile(rf"{_NAME}$")


class ParseError(WKError, ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class MachineFileError(WKError, ValueError):
    """The file parsed but describes an invalid machine."""

    def __init__(self, violations: list[tuple[Optional[int], Violation]]):
        self.violations = violations
        super().__init__("; ".join(format_violation(line, v) for line, v in violations))


def format_violation(line: Optional[int], v: Violation) -> str:
    return f"line {line}: {v.message}" if line is not None else v.message


@dataclass
class ParsedFile:
    machine: Union[TwoWayMachine, OneWayMachine]
    transition_lines: list[int]

    def violations(self) -> list[tuple[Optional[int], Violation]]:
        m = self.machine
        found = validate(m) if isinstance(m, TwoWayMachine) else validate_one_way(m)
        return [(None if v.transition is None else self.transition_lines[v.transition], v) for v in found]


def _word(token: str, lineno: int, col: int, markers_ok: bool) -> str:
    if token == LAMBDA_TOKEN:
        return ""
    if LAMBDA_TOKEN in token:
        raise ParseError("'_' stands for the empty word and cannot be combined with symbols", lineno, col)
    if not markers_ok and any(c in MARKERS for c in token):
        raise ParseError("end markers are not allowed in one-way rules", lineno, col)
    return token


def _direction(token: str, lineno: int, col: int) -> Direction:
    try:
        return Direction(token)
    except ValueError:
        raise ParseError(f"direction must be L, R or 0, got {token!r}", lineno, col) from None


def read_file(text: str) -> ParsedFile:
    """Parse without semantic validation (syntax errors still raise)."""
    fields: dict[str, tuple[str, int, int]] = {}
    trans: list[tuple[str, int, int]] = []
    seen_header = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split(";", 1)[0].rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        line = line.strip()
        if not seen_header:
            if line != HEADER:
                raise ParseError(f"expected header {HEADER!r}", lineno, indent + 1)
            seen_header = True
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise ParseError("expected 'key: value'", lineno, indent + 1)
        col = indent + len(key) + len(sep) + (len(value) - len(value.lstrip())) + 1
        key, value = key.strip(), value.strip()
        if key == "trans":
            trans.append((value, lineno, col))
        elif key in KEYS:
            if key in fields:
                raise ParseError(f"duplicate {key!r} line", lineno, indent + 1)
            fields[key] = (value, lineno, col)
        else:
            raise ParseError(f"unknown key {key!r}", lineno, indent + 1)
    if not seen_header:
        raise ParseError(f"expected header {HEADER!r}", 1)
    missing = [k for k in KEYS if k not in fields]
    if missing:
        raise ParseError(f"missing {', '.join(missing)}", len(text.splitlines()) or 1)

    mode, lineno, col = fields["mode"]
    if mode not in MODES:
        raise ParseError(f"mode must be one-way or two-way, got {mode!r}", lineno, col)
    two_way = mode == "two-way"

    value, lineno, col = fields["alphabet"]
    try:
        alphabet = Alphabet(tuple(value.split()))
    except WKError as e:
        raise ParseError(str(e), lineno, col) from None

    value, lineno, col = fields["complement"]
    pairs = []
    for tok in value.split():
        a, sep, b = tok.partition("~")
        if not sep or len(a) != 1 or len(b) != 1:
            raise ParseError(f"complement pairs are written a~b, got {tok!r}", lineno, col + value.index(tok))
        pairs.append((a, b))
    try:
        rho = ComplementarityRelation.from_pairs(alphabet, pairs)
    except WKError as e:
        raise ParseError(str(e), lineno, col) from None

    names = {}
    for key in ("states", "initial", "final"):
        value, lineno, col = fields[key]
        toks = value.split()
        for tok in toks:
            if not _STATE.match(tok):
                raise ParseError(f"bad state name {tok!r}", lineno, col + value.index(tok))
        names[key] = toks
    if len(names["initial"]) != 1:
        raise ParseError("exactly one initial state expected", fields["initial"][1], fields["initial"][2])

    rules = []
    lines = []
    for value, lineno, col in trans:
        pattern = _TWO_WAY if two_way else _ONE_WAY
        mt = pattern.match(value)
        if mt is None:
            shape = "<from> (<word>,<dir>)(<word>,<dir>) <to>" if two_way else "<from> (<word>)(<word>) <to>"
            raise ParseError(f"malformed rule, expected {shape}", lineno, col)
        at = {g: col + mt.start(g) for g in mt.groupdict()}
        upper = _word(mt["uw"], lineno, at["uw"], two_way)
        lower = _word(mt["lw"], lineno, at["lw"], two_way)
        if two_way:
            ud = _direction(mt["ud"], lineno, at["ud"])
            ld = _direction(mt["ld"], lineno, at["ld"])
            rules.append(TwoWayTransition(mt["src"], StrandRead(upper, ud), StrandRead(lower, ld), mt["dst"]))
        else:
            rules.append(OneWayTransition(mt["src"], upper, lower, mt["dst"]))
        lines.append(lineno)

    cls = TwoWayMachine if two_way else OneWayMachine
    m = cls(alphabet, rho, tuple(names["states"]), names["initial"][0], frozenset(names["final"]), tuple(rules))
    return ParsedFile(m, lines)


def parse(text: str, check: bool = True):
    """Parse a `.wk` document; with `check`, invalid machines raise MachineFileError."""
    parsed = read_file(text)
    if check:
        problems = parsed.violations()
        if problems:
            raise MachineFileError(problems)
    return parsed.machine


def _token(word: str) -> str:
    return word or LAMBDA_TOKEN


def serialize(m) -> str:
    """Canonical text: fixed section order, states as declared, sorted rules."""
    two_way = isinstance(m, TwoWayMachine)
    order = {q: i for i, q in enumerate(m.states)}
    lines = [
        HEADER,
        f"mode: {'two-way' if two_way else 'one-way'}",
        "alphabet: " + " ".join(m.alphabet),
        "complement: " + " ".join(f"{a}~{b}" for a, b in m.rho.unordered_pairs()),
        "states: " + " ".join(m.states),
        f"initial: {m.initial}",
        "final: " + " ".join(sorted(m.finals, key=lambda q: (order.get(q, len(order)), q))),
    ]
    for t in m.canonical().transitions:
        if two_way:
            lines.append(
                f"trans: {t.source} ({_token(t.upper.word)},{t.upper.dir})"
                f"({_token(t.lower.word)},{t.lower.dir}) {t.target}"
            )
        else:
            lines.append(f"trans: {t.source} ({_token(t.upper)})({_token(t.lower)}) {t.target}")
    return "\n".join(line.rstrip() for line in lines) + "\n"
