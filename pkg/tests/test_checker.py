import pytest
from hypothesis import given

from ns4 import corpus
from ns4.checker import SYSTEMS, check, check_ns4, check_prawitz
from ns4.derivation import Assume, BoxE, BoxI, ImpE, ImpI, get_at
from ns4.formula import Atom, Box, neg

from conftest import derivations, load

A, B = Atom("A"), Atom("B")

# expected verdicts: (ns4, v1, v2, v3)
VERDICTS = {
    "prawitz-der1": (False, True, True, True),
    "prawitz-der1-reduct": (False, False, True, True),
    "prawitz-box2": (False, True, True, True),
    "prawitz-box2-reduct": (False, False, False, True),
    "medeiros-cex": (False, False, False, True),
    "medeiros-cex-reduct": (False, False, False, False),
    "medeiros-cex-ns4": (True, False, False, False),
    "prawitz-der1-ns4": (True, False, False, False),
}


@pytest.mark.parametrize("name", sorted(VERDICTS))
def test_corpus_verdicts(name):
    d = load(name)
    got = tuple(check(d, s).valid for s in SYSTEMS)
    assert got == VERDICTS[name]


@pytest.mark.parametrize("name", [n for n in corpus.names() if n not in VERDICTS])
def test_other_corpus_files_are_ns4(name):
    assert check_ns4(load(name)).valid


def test_first_version_violation_sits_at_the_box_introduction():
    d = load("prawitz-der1-reduct")
    rep = check_prawitz(d, "v1")
    assert {v.path for v in rep.violations} == {(0, 0)}
    assert isinstance(get_at(d, (0, 0)), BoxI)
    assert "[]A & []B" in rep.violations[0].reason


def test_second_version_reports_non_essentially_modal_dependency():
    rep = check_prawitz(load("prawitz-box2-reduct"), "v2")
    assert [v.path for v in rep.violations] == [()]
    assert "[]A & B" in rep.violations[0].reason
    assert "not essentially modal" in rep.violations[0].reason


def test_third_version_rejects_reduct_at_bottom_box():
    rep = check_prawitz(load("medeiros-cex-reduct"), "v3")
    assert not rep.valid
    assert {v.path for v in rep.violations} == {()}


def test_ns4_restrictions():
    minor = BoxE(Assume(Box(A), 1))
    assert check_ns4(BoxI((Assume(Box(A)),), 1, minor)).valid
    # minor depends on an open assumption
    bad = BoxI((Assume(Box(A)),), 1, ImpE(Assume(neg(A)), minor))
    assert any("undischarged" in v.reason for v in check_ns4(bad).violations)
    # majors must be distinct
    dup = BoxI((Assume(Box(A)), Assume(Box(A))), 1, minor)
    assert any("distinct" in v.reason for v in check_ns4(dup).violations)
    # discharged formula must be a major
    stray = BoxI((Assume(Box(B)),), 1, minor)
    assert any("not among the majors" in v.reason for v in check_ns4(stray).violations)
    # majors must be boxed
    unboxed = BoxI((Assume(A),), 1, minor)
    assert any("not a Box formula" in v.reason for v in check_ns4(unboxed).violations)


def test_label_hygiene():
    unbound = Assume(A, 4)
    assert not check_ns4(unbound).valid
    reused = ImpI(ImpI(Assume(A, 1), 1, A), 1, A)
    assert any("already used" in v.reason for v in check_ns4(reused).violations)
    mismatch = ImpI(Assume(B, 1), 1, A)
    assert not check_ns4(mismatch).valid


def test_unknown_system():
    with pytest.raises(ValueError):
        check(Assume(A), "s5")


@given(derivations())
def test_generated_derivations_are_ns4(d):
    assert check_ns4(d).valid


def test_closed_premiss_policy():
    d = BoxI((), 1, ImpI(Assume(A, 2), 2, A))
    for v in ("v1", "v2", "v3"):
        assert check_prawitz(d, v).valid
        assert not check_prawitz(d, v, allow_closed=False).valid
