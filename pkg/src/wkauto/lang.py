"""Bounded-language tooling, oracles, random machines and the gallery."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, replace
from typing import Optional

from .core import Alphabet, ComplementarityRelation, WKError, complements_of
from .model import (
    OneWayMachine,
    OneWayTransition,
    StrandRead,
    TwoWayMachine,
    TwoWayTransition,
    rule,
    validate,
)
from .sim import accepts

log = logging.getLogger(__name__)

TWO_WAY_CAP = 10
ONE_WAY_CAP = 12


class CapExceededError(WKError, ValueError):
    pass


class AlphabetMismatchError(WKError, ValueError):
    pass


@dataclass(frozen=True)
class LanguageSample:
    machine: str
    max_len: int
    accepted: tuple[str, ...]


@dataclass(frozen=True)
class EquivalenceReport:
    equivalent: bool
    counterexample: Optional[str]
    max_len: int
    checked: int


def default_cap(m) -> int:
    return ONE_WAY_CAP if isinstance(m, OneWayMachine) else TWO_WAY_CAP


def _check_cap(m, max_len: int, cap: Optional[int]) -> None:
    limit = default_cap(m)
    if cap is not None and cap > limit:
        log.warning("enumeration cap raised from %d to %d; runs may be slow", limit, cap)
        limit = cap
    if max_len > limit:
        raise CapExceededError(f"max_len {max_len} exceeds the enumeration cap {limit}")


def language_sample(m, max_len: int, cap: Optional[int] = None, name: str = "") -> LanguageSample:
    _check_cap(m, max_len, cap)
    words = tuple(w for w in m.alphabet.words(max_len) if accepts(m, w).accepted)
    return LanguageSample(name, max_len, words)


def equivalent_up_to(m1, m2, max_len: int, cap: Optional[int] = None) -> EquivalenceReport:
    """Compare membership on every word up to `max_len`, in length-lex order."""
    if set(m1.alphabet) != set(m2.alphabet):
        raise AlphabetMismatchError(
            f"alphabets differ: {''.join(m1.alphabet)} vs {''.join(m2.alphabet)}"
        )
    _check_cap(m1, max_len, cap)
    _check_cap(m2, max_len, cap)
    checked = 0
    for w in m1.alphabet.words(max_len):
        checked += 1
        if accepts(m1, w).accepted != accepts(m2, w).accepted:
            return EquivalenceReport(False, w, max_len, checked)
    return EquivalenceReport(True, None, max_len, checked)


# -- oracles ------------------------------------------------------------------


def ww_oracle(word: str) -> bool:
    half, odd = divmod(len(word), 2)
    return not odd and word[:half] == word[half:]


def anbn_oracle(word: str) -> bool:
    half, odd = divmod(len(word), 2)
    return not odd and word == "a" * half + "b" * half


# -- gallery ------------------------------------------------------------------

AB = Alphabet(("a", "b"))


def gallery_ww() -> TwoWayMachine:
    """Deterministic two-way acceptor of {ww : w in {a,b}*} with identity complementarity.

    The upper head advances one cell for every two the lower head advances, so
    it sits on the middle when the lower head sees `$`. The lower head then
    rewinds to `#` and both heads compare the halves in lockstep; finally the
    lower head walks off the tape after the upper one.
    """
    sigma = AB.symbols
    R, L, S = "R", "L", "0"
    rules = [rule("q0", ("#", R), ("#", R), "qA")]
    rules += [rule("qA", (x, R), (y + z, R), "qA") for x in sigma for y in sigma for z in sigma]
    rules.append(rule("qA", ("", S), ("$", L), "qB"))
    rules += [rule("qB", ("", S), (x, L), "qB") for x in sigma]
    rules.append(rule("qB", ("", S), ("#", R), "qC"))
    rules += [rule("qC", (x, R), (x, R), "qC") for x in sigma]
    rules.append(rule("qC", ("$", R), ("", S), "qD"))
    rules += [rule("qD", ("", S), (x, R), "qD") for x in sigma]
    rules.append(rule("qD", ("", S), ("$", R), "qF"))
    m = TwoWayMachine(
        alphabet=AB,
        rho=ComplementarityRelation.identity(AB),
        states=("q0", "qA", "qB", "qC", "qD", "qF"),
        initial="q0",
        finals=frozenset({"qF"}),
        transitions=tuple(rules),
    )
    return m.canonical()


def gallery_anbn() -> OneWayMachine:
    """One-way acceptor of {a^n b^n}: upper a's run ahead, lower catches up over the b's."""
    rules = [
        OneWayTransition("q0", "a", "", "q0"),
        OneWayTransition("q0", "b", "a", "q1"),
        OneWayTransition("q1", "b", "a", "q1"),
        OneWayTransition("q1", "", "b", "q2"),
        OneWayTransition("q2", "", "b", "q2"),
    ]
    m = OneWayMachine(
        alphabet=AB,
        rho=ComplementarityRelation.identity(AB),
        states=("q0", "q1", "q2"),
        initial="q0",
        finals=frozenset({"q0", "q2"}),
        transitions=tuple(rules),
    )
    return m.canonical()


GALLERY = {"ww": gallery_ww, "anbn": gallery_anbn}


# -- random machines ------------------------------------------------------------


@dataclass(frozen=True)
class Limits:
    states: int = 4
    transitions: int = 8
    alphabet: int = 2
    rho_kind: str = "identity"  # or "non_injective"
    max_word: int = 2

    def __post_init__(self) -> None:
        if not (1 <= self.states <= 4 and 1 <= self.transitions <= 8 and 1 <= self.alphabet <= 2):
            raise ValueError(f"limits out of range: {self}")
        if not 0 <= self.max_word <= 2:
            raise ValueError("read words are limited to 2 symbols plus a marker")
        if self.rho_kind not in ("identity", "non_injective"):
            raise ValueError(f"unknown rho kind {self.rho_kind!r}")


def _random_read(rng: random.Random, symbols, max_word: int) -> StrandRead:
    d = rng.choices(("R", "L", "0"), weights=(5, 2, 3))[0]
    if d == "0":
        return StrandRead.of("", "0")
    while True:
        size = rng.choices(range(max_word + 1), weights=(1, 4, 1)[: max_word + 1])[0]
        body = "".join(rng.choice(symbols) for _ in range(size))
        if d == "R":
            if rng.random() < 0.15:
                body = "#" + body
            if rng.random() < 0.3:
                body += "$"
        elif rng.random() < 0.3:
            body = "$" + body
        if body:
            return StrandRead.of(body, d)


def _walk_read(rng: random.Random, tape: str, pos: int, max_word: int) -> StrandRead:
    """A read that succeeds on `tape` at `pos` (a fallen-off head only reads λ)."""
    n = len(tape)
    if pos >= n or rng.random() < 0.25:
        return StrandRead.of("", "0")
    if pos > 0 and rng.random() < 0.2:
        word = tape[pos]
        while len(word) < max_word and pos - len(word) > 0 and rng.random() < 0.4:
            word += tape[pos - len(word)]
        if not word.endswith("#"):
            return StrandRead.of(word, "L")
    word = tape[pos]
    while pos + len(word) < n and rng.random() < 0.5:
        nxt = word + tape[pos + len(word)]
        if sum(c not in "#$" for c in nxt) > max_word:
            break
        word = nxt
    return StrandRead.of(word, "R")


def random_machine(seed: int, limits: Limits = Limits()) -> TwoWayMachine:
    """Deterministic in `seed`; always passes `validate`.

    Uniformly random rules rarely carry both heads from `#` to past `$`, so
    most generated machines first get the rules of one random run planted on a
    random short double strand, then random rules on top.
    """
    rng = random.Random(seed)
    alphabet = Alphabet(("a", "b")[: limits.alphabet])
    if limits.rho_kind == "identity" or len(alphabet) == 1:
        rho = ComplementarityRelation.identity(alphabet)
    else:
        rho = ComplementarityRelation.from_pairs(alphabet, [("a", "a"), ("a", "b")])
    states = tuple(f"s{i}" for i in range(rng.randint(1, limits.states)))
    finals = set(q for q in states if rng.random() < 0.4)
    n_rules = rng.randint(2, limits.transitions)
    rules: list[TwoWayTransition] = []

    if rng.random() < 0.8:
        upper = "".join(rng.choice(alphabet.symbols) for _ in range(rng.randint(0, 3)))
        lower = "".join(rng.choice(sorted(complements_of(rho, c))) for c in upper)
        tapes = ("#" + upper + "$", "#" + lower + "$")
        pos, q = [0, 0], states[0]
        n = len(tapes[0])
        while len(rules) < n_rules and pos != [n, n]:
            up = _walk_read(rng, tapes[0], pos[0], limits.max_word)
            low = _walk_read(rng, tapes[1], pos[1], limits.max_word)
            if up.is_lambda and low.is_lambda:
                continue
            t = TwoWayTransition(q, up, low, rng.choice(states))
            if t not in rules:
                rules.append(t)
            for i, r in enumerate((up, low)):
                pos[i] += len(r.word) * {"R": 1, "L": -1, "0": 0}[r.dir.value]
            q = t.target
        if pos == [n, n] and rng.random() < 0.7:
            finals.add(q)

    while len(rules) < n_rules:
        up = _random_read(rng, alphabet.symbols, limits.max_word)
        low = _random_read(rng, alphabet.symbols, limits.max_word)
        if up.is_lambda and low.is_lambda:
            continue
        t = TwoWayTransition(rng.choice(states), up, low, rng.choice(states))
        if t not in rules:
            rules.append(t)
    m = TwoWayMachine(alphabet, rho, states, states[0], frozenset(finals), tuple(rules))
    assert not validate(m), validate(m)
    return m


def inject_lambda_lambda(m: TwoWayMachine, seed: int, count: int = 2) -> TwoWayMachine:
    """Add `count` random λ/λ rules (the result no longer passes `validate`)."""
    rng = random.Random(seed)
    lam = StrandRead.of("", "0")
    extra = [
        TwoWayTransition(rng.choice(m.states), lam, lam, rng.choice(m.states)) for _ in range(count)
    ]
    return replace(m, transitions=m.transitions + tuple(extra))


def random_corpus(n: int = 100, base_seed: int = 0) -> list[TwoWayMachine]:
    """`n` machines alternating identity and non-injective complementarity."""
    out = []
    for i in range(n):
        kind = "identity" if i % 2 == 0 else "non_injective"
        out.append(random_machine(base_seed + i, Limits(rho_kind=kind)))
    return out
