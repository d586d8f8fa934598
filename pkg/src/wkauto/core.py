"""Alphabets, complementarity relations and end-marked double-stranded tapes."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

LEFT_MARKER = "#"
RIGHT_MARKER = "$"
MARKERS = frozenset((LEFT_MARKER, RIGHT_MARKER))

# `~` and `;` are taken by the machine file syntax (pair separator, comments).
RESERVED = frozenset("#$_(),|~;")


class WKError(Exception):
    """Base class for errors raised by this package."""


class AlphabetError(WKError, ValueError):
    pass


class UnknownSymbolError(WKError, ValueError):
    pass


class StrandLengthError(WKError, ValueError):
    """Upper and lower tapes of a double strand differ in length."""


class TapeError(WKError, ValueError):
    pass


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple[str, ...]

    def __post_init__(self) -> None:
        symbols = tuple(self.symbols)
        object.__setattr__(self, "symbols", symbols)
        if not symbols:
            raise AlphabetError("alphabet must not be empty")
        if len(set(symbols)) != len(symbols):
            raise AlphabetError(f"duplicate symbols in {symbols!r}")
        for s in symbols:
            if not isinstance(s, str) or len(s) != 1:
                raise AlphabetError(f"symbols must be single characters, got {s!r}")
            if s in RESERVED or s.isspace() or not s.isprintable():
                raise AlphabetError(f"reserved or unprintable symbol {s!r}")

    def __contains__(self, symbol: object) -> bool:
        return symbol in self.symbols

    def __iter__(self) -> Iterator[str]:
        return iter(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def index(self, symbol: str) -> int:
        return self.symbols.index(symbol)

    def check_word(self, word: str) -> None:
        for s in word:
            if s not in self.symbols:
                raise UnknownSymbolError(f"symbol {s!r} is not in the alphabet")

    def words(self, max_len: int) -> Iterator[str]:
        """All words of length <= max_len in length-then-lexicographic order."""
        for n in range(max_len + 1):
            for letters in itertools.product(self.symbols, repeat=n):
                yield "".join(letters)


@dataclass(frozen=True)
class ComplementarityRelation:
    """Symmetric relation on an alphabet, closed under symmetry on construction."""

    alphabet: Alphabet
    pairs: frozenset[tuple[str, str]]

    def __post_init__(self) -> None:
        closed = set()
        for a, b in self.pairs:
            for s in (a, b):
                if s not in self.alphabet:
                    raise UnknownSymbolError(f"relation mentions {s!r}, not in the alphabet")
            closed.add((a, b))
            closed.add((b, a))
        object.__setattr__(self, "pairs", frozenset(closed))

    @classmethod
    def identity(cls, alphabet: Alphabet) -> ComplementarityRelation:
        return cls(alphabet, frozenset((s, s) for s in alphabet))

    @classmethod
    def from_pairs(cls, alphabet: Alphabet, pairs: Iterable[tuple[str, str]]) -> ComplementarityRelation:
        return cls(alphabet, frozenset(pairs))

    def __contains__(self, pair: object) -> bool:
        return pair in self.pairs

    def unordered_pairs(self) -> list[tuple[str, str]]:
        """Each symmetric pair once, smaller symbol first, in alphabet order."""
        idx = self.alphabet.index
        out = {tuple(sorted(p, key=idx)) for p in self.pairs}
        return sorted(out, key=lambda p: (idx(p[0]), idx(p[1])))


def complements_of(rel: ComplementarityRelation, s: str) -> frozenset[str]:
    if s not in rel.alphabet:
        raise UnknownSymbolError(f"symbol {s!r} is not in the alphabet")
    return frozenset(t for (u, t) in rel.pairs if u == s)


def enumerate_lower_strands(rel: ComplementarityRelation, upper_word: str) -> Iterator[str]:
    """Yield every lower strand complementary to `upper_word`, lexicographically.

    The count is the product of the per-position complement set sizes; an
    uncomplemented position makes the stream empty.
    """
    rel.alphabet.check_word(upper_word)
    idx = rel.alphabet.index
    choices = [sorted(complements_of(rel, s), key=idx) for s in upper_word]
    for letters in itertools.product(*choices):
        yield "".join(letters)


def prefix_comparable(u: str, v: str) -> bool:
    return u.startswith(v) or v.startswith(u)


@dataclass(frozen=True)
class Tape:
    """`#`, the word, `$`; cell indices run 0..len(cells)-1."""

    cells: tuple[str, ...]

    def __post_init__(self) -> None:
        cells = tuple(self.cells)
        object.__setattr__(self, "cells", cells)
        if len(cells) < 2 or cells[0] != LEFT_MARKER or cells[-1] != RIGHT_MARKER:
            raise TapeError("tape must start with '#' and end with '$'")
        if any(c in MARKERS for c in cells[1:-1]):
            raise TapeError("end markers may only appear at the tape ends")

    @classmethod
    def for_word(cls, word: str) -> Tape:
        return cls((LEFT_MARKER, *word, RIGHT_MARKER))

    @property
    def word(self) -> str:
        return "".join(self.cells[1:-1])

    def __len__(self) -> int:
        return len(self.cells)

    def __getitem__(self, i: int) -> str:
        return self.cells[i]

    def __str__(self) -> str:
        return "".join(self.cells)


@dataclass(frozen=True)
class DoubleStrand:
    upper: Tape
    lower: Tape

    @classmethod
    def from_words(cls, upper: str, lower: str) -> DoubleStrand:
        return cls(Tape.for_word(upper), Tape.for_word(lower))

    def __len__(self) -> int:
        return len(self.upper)


def validate_double_strand(ds: DoubleStrand, rel: ComplementarityRelation) -> bool:
    """True iff every interior column is in the relation.

    Raises StrandLengthError when the tapes differ in length, since no column
    alignment exists to check.
    """
    if len(ds.upper) != len(ds.lower):
        raise StrandLengthError(
            f"upper tape has {len(ds.upper)} cells, lower has {len(ds.lower)}"
        )
    return all(
        (a, b) in rel.pairs for a, b in zip(ds.upper.cells[1:-1], ds.lower.cells[1:-1])
    )
