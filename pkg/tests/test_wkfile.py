from importlib import resources

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wkauto.lang import gallery_anbn, gallery_ww, random_machine, Limits
from wkauto.model import TwoWayMachine
from wkauto.wkfile import MachineFileError, ParseError, parse, read_file, serialize


def shipped(name):
    return resources.files("wkauto").joinpath("gallery", f"{name}.wk").read_text(encoding="utf-8")


HEAD = """wk-automaton v1
mode: two-way
alphabet: a b
complement: a~a b~b
states: q0 q1
initial: q0
final: q1
"""


def test_shipped_files_are_canonical():
    assert serialize(gallery_ww()) == shipped("ww")
    assert serialize(gallery_anbn()) == shipped("anbn")


def test_shipped_files_parse_to_gallery():
    assert parse(shipped("ww")) == gallery_ww()
    assert parse(shipped("anbn")) == gallery_anbn()


def test_left_edge_violation_has_line():
    with pytest.raises(MachineFileError) as e:
        parse(HEAD + "trans: q0 (ab#,L)(_,0) q1\n")
    [(line, v)] = e.value.violations
    assert line == 8 and v.message == "L-read ends with #"


def test_lambda_with_direction():
    with pytest.raises(MachineFileError) as e:
        parse(HEAD + "trans: q0 (_,R)(a,R) q1\n")
    assert "λ read requires direction 0" in str(e.value)


def test_syntax_error_position():
    with pytest.raises(ParseError) as e:
        parse(HEAD + "trans: q0 (a,X)(a,R) q1\n")
    assert (e.value.line, e.value.column) == (8, 14)
    with pytest.raises(ParseError) as e:
        parse(HEAD + "trans: q0 a a q1\n")
    assert e.value.line == 8


@pytest.mark.parametrize("text", ["", "wk-automaton v2\n", HEAD.replace("mode: two-way", "mode: 3-way"),
                                  HEAD.replace("a~a", "a-a"), HEAD + "bogus: 1\n", HEAD.replace("final: q1\n", "")])
def test_bad_documents(text):
    with pytest.raises(ParseError):
        parse(text)


def test_comments_and_blank_lines():
    text = "; a comment\n\n" + HEAD + "trans: q0 (#,R)(#,R) q1   ; trailing\n"
    m = parse(text)
    assert len(m.transitions) == 1


def test_markers_not_allowed_one_way():
    text = HEAD.replace("two-way", "one-way") + "trans: q0 (#)(_) q1\n"
    with pytest.raises(ParseError):
        parse(text)


def test_no_transitions_round_trip():
    m = parse(HEAD)
    assert m.transitions == ()
    assert parse(serialize(m)) == m


def test_complement_closed_and_written_once():
    m = parse(HEAD.replace("a~a b~b", "b~a a~a"))
    assert serialize(m).splitlines()[3] == "complement: a~a a~b"


def test_read_file_without_checks_keeps_violations():
    parsed = read_file(HEAD + "trans: q0 (_,0)(_,0) q1\n")
    assert [(line, v.message) for line, v in parsed.violations()] == [(8, "λ/λ transition")]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(["identity", "non_injective"]))
def test_round_trip_random(seed, kind):
    m = random_machine(seed, Limits(rho_kind=kind))
    text = serialize(m)
    assert parse(text) == m.canonical()
    assert serialize(parse(text)) == text
