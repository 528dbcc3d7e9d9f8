from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from ns4 import corpus
from ns4.derivation import Assume, BoxE
from ns4.formula import Atom, Box
from ns4.render import FORMATS, ascii_tree, render
from ns4.syntax import ParseError, parse_derivation, parse_derivation_with_spans, pretty_sexpr, to_sexpr

from conftest import derivations, load

GOLDEN = Path(__file__).parent / "golden"


def test_box_elimination_over_box_assumption():
    assert parse_derivation("(boxE (assume [](A) ))") == BoxE(Assume(Box(Atom("A"))))


def test_coherence_error_carries_span_and_formula():
    text = "(impI A 1 (boxE (assume A)))"
    with pytest.raises(ParseError) as e:
        parse_derivation(text)
    assert "major premiss must be Box" in e.value.message
    assert text[e.value.span.start:e.value.span.end] == "(boxE (assume A))"


def test_comments_and_whitespace():
    a = parse_derivation("# c\n(andI\n  (assume A)   # left\n  (assume B))")
    assert to_sexpr(a) == "(andI (assume A) (assume B))"


def test_spans_point_at_subterms():
    text = "(andI (assume A) (andEl (assume B & C)))"
    d, spans = parse_derivation_with_spans(text)
    s = spans[(1,)]
    assert text[s.start:s.end] == "(andEl (assume B & C))"


def test_canonical_form_is_single_spaced():
    for name in corpus.names():
        s = to_sexpr(load(name))
        assert "  " not in s and s == s.strip() and "\n" not in s


@pytest.mark.parametrize("name", corpus.names())
def test_corpus_round_trip(name):
    d = load(name)
    assert parse_derivation(render(d, "canonical-sexpr")) == d
    assert parse_derivation(pretty_sexpr(d)) == d


@settings(max_examples=300)
@given(derivations())
def test_random_round_trip(d):
    assert parse_derivation(to_sexpr(d)) == d
    assert parse_derivation(pretty_sexpr(d, width=40)) == d


@given(st.text(alphabet="()[]~&|->abAB 123assumeboxIandE#\n", max_size=60))
def test_parse_errors_are_in_bounds(text):
    try:
        parse_derivation(text)
    except ParseError as e:
        assert 0 <= e.span.start <= e.span.end <= len(text)


@pytest.mark.parametrize("text", ["", "(", "(assume", "(assume A 0)", "(frob A)", "(andI (assume A))", "(assume A) x"])
def test_malformed_inputs(text):
    with pytest.raises(ParseError) as e:
        parse_derivation(text)
    assert 0 <= e.value.span.start <= e.value.span.end <= len(text)


def test_parse_is_deterministic():
    text = corpus.text("botc-box-copies-nested")
    assert parse_derivation(text) == parse_derivation(text)


def test_latex_golden():
    got = render(load("box-detour"), "latex-tree")
    assert got + "\n" == (GOLDEN / "box-detour.tex").read_text()


def test_ascii_single_assumption_is_one_line():
    assert ascii_tree(Assume(Atom("A"))) == "A"
    assert ascii_tree(Assume(Atom("A"), 3)) == "[A]^3"


def test_ascii_tree_layout():
    lines = ascii_tree(load("box-detour-reduct")).splitlines()
    assert lines[-1].strip() == "P & Q"
    assert lines[-2].strip().startswith("-") and lines[-2].endswith("andI")
    assert all(line == line.rstrip() for line in lines)


def test_latex_wide_box_introduction_collapses_majors():
    majors = " ".join(f"(assume []{x})" for x in "ABCDEF")
    d = parse_derivation(f"(boxI ({majors}) 1 (andI (boxE (assume []A 1)) (boxE (assume []B 1))))")
    out = render(d, "latex-tree")
    assert "QuinaryInfC" in out


def test_unknown_format():
    with pytest.raises(ValueError):
        render(Assume(Atom("A")), "svg")
    assert set(FORMATS) == {"canonical-sexpr", "ascii-tree", "latex-tree"}
