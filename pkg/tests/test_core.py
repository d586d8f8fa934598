import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wkauto.core import (
    Alphabet,
    AlphabetError,
    ComplementarityRelation,
    DoubleStrand,
    StrandLengthError,
    Tape,
    TapeError,
    UnknownSymbolError,
    complements_of,
    enumerate_lower_strands,
    prefix_comparable,
    validate_double_strand,
)

AB = Alphabet(("a", "b"))
ABC = Alphabet(("a", "b", "c"))


def rel(alphabet, *pairs):
    return ComplementarityRelation.from_pairs(alphabet, pairs)


def test_identity_complements():
    assert complements_of(ComplementarityRelation.identity(AB), "a") == {"a"}


def test_symmetry_closure():
    r = rel(AB, ("a", "b"))
    assert complements_of(r, "a") == {"b"}
    assert complements_of(r, "b") == {"a"}


def test_non_injective_complements():
    r = rel(AB, ("a", "a"), ("a", "b"))
    assert complements_of(r, "a") == {"a", "b"}
    assert complements_of(r, "b") == {"a"}


def test_unknown_symbol():
    with pytest.raises(UnknownSymbolError):
        complements_of(ComplementarityRelation.identity(AB), "c")
    with pytest.raises(UnknownSymbolError):
        rel(AB, ("a", "z"))


@pytest.mark.parametrize("symbols", [(), ("a", "a"), ("ab",), ("#",), ("$",), ("_",), (" ",), ("~",)])
def test_bad_alphabets(symbols):
    with pytest.raises(AlphabetError):
        Alphabet(symbols)


def test_enumerate_identity():
    assert list(enumerate_lower_strands(ComplementarityRelation.identity(AB), "ab")) == ["ab"]


def test_enumerate_product():
    r = rel(AB, ("a", "a"), ("a", "b"), ("b", "b"))
    assert list(enumerate_lower_strands(r, "a")) == ["a", "b"]


def test_enumerate_empty_word():
    assert list(enumerate_lower_strands(rel(AB, ("a", "b")), "")) == [""]


def test_enumerate_no_complement():
    # `c` has no partner, so no double strand exists
    assert list(enumerate_lower_strands(rel(ABC, ("a", "b")), "ac")) == []


def brute_lower_strands(r, upper):
    """Every word of the same length, filtered column by column."""
    out = []
    for letters in itertools.product(r.alphabet.symbols, repeat=len(upper)):
        if all((u, l) in r.pairs for u, l in zip(upper, letters)):
            out.append("".join(letters))
    return out


relations = st.sets(st.tuples(st.sampled_from("abc"), st.sampled_from("abc"))).map(
    lambda ps: ComplementarityRelation.from_pairs(ABC, ps)
)


@given(relations, st.text(alphabet="abc", max_size=4))
def test_count_law_against_brute_force(r, upper):
    got = list(enumerate_lower_strands(r, upper))
    assert got == brute_lower_strands(r, upper)
    assert len(set(got)) == len(got)
    expected = 1
    for s in upper:
        expected *= len(complements_of(r, s))
    assert len(got) == expected
    for lower in got:
        assert validate_double_strand(DoubleStrand.from_words(upper, lower), r)


@given(relations, st.sampled_from("abc"), st.sampled_from("abc"))
def test_complement_symmetry(r, s, t):
    assert (t in complements_of(r, s)) == (s in complements_of(r, t))


def test_prefix_comparable_examples():
    assert prefix_comparable("ab", "abba")
    assert not prefix_comparable("ab", "ba")
    assert prefix_comparable("", "x")


@given(st.text(alphabet="ab", max_size=6), st.text(alphabet="ab", max_size=6), st.text(alphabet="ab", max_size=3))
def test_prefix_comparable_properties(u, v, x):
    assert prefix_comparable(u, u)
    assert prefix_comparable(u, v) == prefix_comparable(v, u)
    # both prefixes of a common word are comparable
    assert prefix_comparable(u, u + x)
    w = u + v
    for i in range(len(w) + 1):
        for j in range(len(w) + 1):
            assert prefix_comparable(w[:i], w[:j])


def test_tape_shape():
    t = Tape.for_word("ab")
    assert t.cells == ("#", "a", "b", "$")
    assert len(t) == 4
    assert t.word == "ab"
    with pytest.raises(TapeError):
        Tape(("a", "$"))
    with pytest.raises(TapeError):
        Tape(("#", "$", "$"))


def test_validate_double_strand():
    ident = ComplementarityRelation.identity(AB)
    assert validate_double_strand(DoubleStrand.from_words("ab", "ab"), ident)
    assert not validate_double_strand(DoubleStrand.from_words("ab", "aa"), ident)
    assert validate_double_strand(DoubleStrand.from_words("ab", "ba"), rel(AB, ("a", "b")))


def test_double_strand_length_mismatch_is_an_error():
    with pytest.raises(StrandLengthError):
        validate_double_strand(DoubleStrand.from_words("ab", "a"), ComplementarityRelation.identity(AB))
