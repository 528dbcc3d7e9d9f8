import pytest
from hypothesis import given, settings

from ns4 import corpus
from ns4.analysis import (
    AnalysisError, Index, count_top_degree_maximal, critical_paths, derivation_degree, index,
    is_critical, is_normal, is_simplified, maximal_segments, measures, segments, subtree_degrees,
    trivial_formulas,
)
from ns4.derivation import Assume, BotC, ImpE, detach, get_at, iter_nodes
from ns4.formula import Atom, neg

from conftest import derivations, load
from oracles import oracle_index, oracle_maximal, oracle_segments


def test_medeiros_has_one_maximal_box():
    for name, system in (("medeiros-cex", "prawitz-v3"), ("medeiros-cex-ns4", True)):
        d = load(name)
        ms = maximal_segments(d, validate=system)
        assert [str(s.formula) for s in ms] == ["[]A"]
        assert derivation_degree(d, validate=system) == 1
        assert not is_normal(d, validate=system)


def test_refuses_invalid_input():
    with pytest.raises(AnalysisError):
        index(load("medeiros-cex"))


def test_normal_corpus_file():
    d = load("already-normal")
    assert index(d) == Index(0, 0) and is_normal(d)
    assert str(index(d)) == "(0,0)"


def test_segment_through_box_majors_has_length_three():
    d = load("botc-box-copies-nested")
    lengths = sorted(s.length for s in maximal_segments(d))
    assert lengths == [2, 2, 3]
    assert index(d) == Index(2, 7)


def test_top_count_counts_length_one():
    assert count_top_degree_maximal(load("box-detour")) == 1
    assert count_top_degree_maximal(load("box-nested")) == 0
    m = measures(load("box-detour"))
    assert (m.G, m.I, m.top_count, m.length) == (2, Index(2, 1), 1, 9)


def test_copying_fixtures_are_critical():
    for name in corpus.names():
        if name.startswith("botc-"):
            d = load(name)
            assert is_critical(d) and is_simplified(d) and not trivial_formulas(d)


def test_trivial_formula_detection():
    A = Atom("A")
    inner = BotC(ImpE(Assume(neg(A), 1), Assume(A)), 1, A)
    d = ImpE(Assume(neg(A)), inner)
    assert trivial_formulas(d) == [(1,)]


def _occurrences(segs):
    return sorted(s.occurrences for s in segs)


@settings(max_examples=200)
@given(derivations(max_nodes=60))
def test_agrees_with_oracle(d):
    _, osegs = oracle_segments(d)
    _, omax = oracle_maximal(d)
    assert _occurrences(segments(d)) == sorted(osegs)
    assert _occurrences(maximal_segments(d)) == sorted(omax)
    assert tuple(index(d)) == oracle_index(d)
    assert derivation_degree(d) == oracle_index(d)[0]


@settings(max_examples=150)
@given(derivations(max_nodes=40))
def test_subtree_degrees_match_detached_subtrees(d):
    deg = subtree_degrees(d)
    for path, node in iter_nodes(d):
        assert deg[path] == derivation_degree(detach(node), validate=False)


@settings(max_examples=150)
@given(derivations(max_nodes=40))
def test_critical_paths_are_critical_and_incomparable(d):
    paths = critical_paths(d)
    g = derivation_degree(d)
    assert bool(paths) == (g > 0)
    for p in paths:
        sub = detach(get_at(d, p))
        assert derivation_degree(sub, validate=False) == g
        assert is_critical(sub)
    for p in paths:
        for q in paths:
            assert p == q or q[: len(p)] != p
