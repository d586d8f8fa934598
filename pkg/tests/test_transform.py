from dataclasses import replace

import pytest

from wkauto.core import Alphabet, ComplementarityRelation
from wkauto.lang import equivalent_up_to, random_machine, ww_oracle, Limits
from wkauto.model import StrandRead, TwoWayMachine, TwoWayTransition, classify_subclass, rule, validate
from wkauto.sim import accepts_two_way
from wkauto.transform import LambdaLambdaError, explain_construction, to_all_final

AB = Alphabet(("a", "b"))
IDENT = ComplementarityRelation.identity(AB)


def test_gallery_all_final_matches_oracle(ww):
    out = to_all_final(ww).machine
    assert classify_subclass(out).all_final
    assert validate(out) == []
    for w in AB.words(8):
        assert accepts_two_way(out, w).accepted == ww_oracle(w)


def test_gallery_state_map(ww):
    result = to_all_final(ww)
    assert result.state_map["qD"].upper_shadow == "qD_us"
    assert result.state_map["qD"].lower_shadow is None
    assert result.dead is None
    assert set(result.machine.states) == set(ww.states) | {"qD_us"}


def test_both_fall_nonfinal_goes_dead():
    m = TwoWayMachine(AB, IDENT, ("q0", "q1"), "q0", frozenset(), (rule("q0", "ab$", "b$", "q1"),))
    result = to_all_final(m)
    assert result.dead == "dead"
    assert rule("q0", "ab", "b", "dead") in result.machine.transitions
    assert not result.machine.outgoing("dead")
    assert "dead" in result.machine.finals
    assert equivalent_up_to(m, result.machine, 4).equivalent


def test_already_all_final_class1_is_unchanged():
    m = TwoWayMachine(
        AB, IDENT, ("q0", "q1"), "q0", frozenset({"q0", "q1"}),
        (rule("q0", "#", "#", "q1"), rule("q1", "a", ("a", "L"), "q0")),
    )
    assert to_all_final(m).machine == m


def test_refuses_lambda_lambda():
    lam = StrandRead.of("", "0")
    m = TwoWayMachine(AB, IDENT, ("q0",), "q0", frozenset(), (TwoWayTransition("q0", lam, lam, "q0"),))
    with pytest.raises(LambdaLambdaError):
        to_all_final(m)


def withheld_marker_machine():
    # the upper head falls off into non-final q2; the lower head then falls off into final q3
    return TwoWayMachine(
        AB, IDENT, ("q0", "q1", "q2", "q3"), "q0", frozenset({"q3"}),
        (
            rule("q0", "#", "#", "q1"),
            rule("q1", "a$", "", "q2"),
            rule("q2", "", "a", "q2"),
            rule("q2", "", "$", "q3"),
        ),
    )


def test_withheld_marker_is_read_with_the_last_lower_move():
    m = withheld_marker_machine()
    out = to_all_final(m).machine
    assert rule("q2_us", "$", "$", "q3") in out.transitions
    assert accepts_two_way(m, "a").accepted
    assert accepts_two_way(out, "a").accepted
    # copying the rule verbatim leaves the upper head parked on `$`
    literal = replace(out, transitions=tuple(
        rule("q2_us", "", "$", "q3") if t == rule("q2_us", "$", "$", "q3") else t for t in out.transitions
    ))
    assert not accepts_two_way(literal, "a").accepted


def test_lower_shadow_mirror():
    m = TwoWayMachine(
        AB, IDENT, ("q0", "q1", "q2", "q3"), "q0", frozenset({"q3"}),
        (
            rule("q0", "#", "#", "q1"),
            rule("q1", "", "b$", "q2"),
            rule("q2", "b", "", "q2"),
            rule("q2", "$", "", "q3"),
            rule("q2", "a$", "", "q1"),
        ),
    )
    result = to_all_final(m)
    assert result.state_map["q2"].lower_shadow == "q2_ls"
    assert rule("q2_ls", "$", "$", "q3") in result.machine.transitions
    assert rule("q2_ls", "a", "", "dead") in result.machine.transitions
    assert equivalent_up_to(m, result.machine, 6).equivalent


def test_explain_ledger(ww):
    text = explain_construction(ww)
    assert "qC ($,R)(_,0) qD: Class3, case 2" in text
    assert "-> qC (_,0)(_,0) qD_us" in text
    assert "qA (_,0)($,L) qB: Class5, copied" in text
    assert "q0 (#,R)(#,R) qA: Class1, copied" in text
    m = TwoWayMachine(AB, IDENT, ("q", "p"), "q", frozenset(), (rule("q", ("$", "L"), ("$", "L"), "p"),
                                                                rule("q", "a", ("b", "L"), "p")))
    text = explain_construction(m)
    assert "q ($,L)($,L) p: Class5, copied" in text
    assert "q (a,R)(b,L) p: Class1, copied" in text


@pytest.mark.parametrize("seed", range(40))
def test_unpruned_output_is_equivalent_too(seed):
    m = random_machine(700 + seed, Limits(rho_kind="non_injective" if seed % 2 else "identity"))
    result = to_all_final(m, prune=False)
    assert validate(result.machine) == []
    assert equivalent_up_to(m, result.machine, 5).equivalent
    if result.dead:
        assert not result.machine.outgoing(result.dead)


def test_construction_is_not_vacuous(corpus):
    # marking every state final is wrong for a good share of the corpus
    differs = sum(
        not equivalent_up_to(m, replace(m, finals=frozenset(m.states)), 5).equivalent for m in corpus
    )
    assert differs >= 5
