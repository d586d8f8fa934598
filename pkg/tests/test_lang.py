import logging
from collections import Counter
from dataclasses import replace

import pytest

from wkauto.lang import (
    AlphabetMismatchError,
    CapExceededError,
    Limits,
    equivalent_up_to,
    gallery_anbn,
    language_sample,
    random_corpus,
    random_machine,
    ww_oracle,
)
from wkauto.core import Alphabet, ComplementarityRelation
from wkauto.model import TwoWayMachine, classify_transition, validate


def test_ww_sample(ww):
    assert language_sample(ww, 4).accepted == ("", "aa", "bb", "aaaa", "abab", "baba", "bbbb")


def test_no_finals_empty_sample(ww):
    assert language_sample(replace(ww, finals=frozenset()), 4).accepted == ()


def test_anbn_sample(anbn):
    assert language_sample(anbn, 4).accepted == ("", "ab", "aabb")


def test_sample_membership_coherence(ww):
    sample = set(language_sample(ww, 6).accepted)
    for w in ww.alphabet.words(6):
        assert (w in sample) == ww_oracle(w)


def test_cap(ww, anbn, caplog):
    with pytest.raises(CapExceededError):
        language_sample(ww, 11)
    language_sample(anbn, 12)
    with pytest.raises(CapExceededError):
        language_sample(anbn, 13)
    with caplog.at_level(logging.WARNING):
        equivalent_up_to(anbn, anbn, 0, cap=20)
    assert "cap raised" in caplog.text


@pytest.mark.parametrize("word,expected", [("abab", True), ("aba", False), ("", True), ("abba", False)])
def test_ww_oracle(word, expected):
    assert ww_oracle(word) is expected


def test_equivalence_reports(ww):
    report = equivalent_up_to(ww, ww, 5)
    assert report.equivalent and report.counterexample is None and report.checked == 63
    report = equivalent_up_to(ww, replace(ww, finals=frozenset()), 2)
    assert not report.equivalent and report.counterexample == "" and report.checked == 1


def test_equivalence_needs_same_alphabet(ww):
    other = Alphabet(("a", "c"))
    m = TwoWayMachine(other, ComplementarityRelation.identity(other), ("q",), "q", frozenset())
    with pytest.raises(AlphabetMismatchError):
        equivalent_up_to(ww, m, 2)


def test_random_machine_deterministic_in_seed():
    assert random_machine(17) == random_machine(17)
    assert random_machine(17) != random_machine(18)


def test_random_corpus_valid_and_covers_all_classes(corpus):
    seen = Counter()
    for m in corpus:
        assert validate(m) == []
        assert len(m.states) <= 4 and len(m.transitions) <= 8 and len(m.alphabet) <= 2
        seen.update(classify_transition(t) for t in m.transitions)
    assert len(seen) == 5


def test_random_corpus_has_non_trivial_languages(corpus):
    nonempty = sum(bool(language_sample(m, 5).accepted) for m in corpus)
    assert nonempty >= 25


def test_limits_checked():
    with pytest.raises(ValueError):
        Limits(states=5)
    with pytest.raises(ValueError):
        Limits(rho_kind="weird")
