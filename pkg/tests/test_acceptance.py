"""Acceptance gate: one test per criterion, each reporting a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v``; the per-criterion
lines are printed in the terminal summary (and immediately with ``-s``).
"""

import functools
import random
import time

from ns4 import corpus
from ns4.analysis import (
    derivation_degree, index, is_normal, is_simplified, maximal_segments, segments,
    subtree_degrees, trivial_formulas,
)
from ns4.checker import check_ns4, check_prawitz
from ns4.derivation import Assume, BoxI, alpha_equal, get_at, iter_nodes, open_assumptions, size
from ns4.generate import critical_samples, random_derivations
from ns4.reduction import critical_reduce, normalize, reduce_step, simplify
from ns4.syntax import ParseError, parse_derivation, parse_formula, to_sexpr

from oracles import oracle_index, oracle_maximal, oracle_segments, printed_degree

RESULTS = {}


def criterion(number, title):
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            t0 = time.perf_counter()
            try:
                detail = fn(*args, **kwargs) or ""
            except BaseException as e:
                line = f"[FAIL] {number:>2}. {title} ({time.perf_counter() - t0:.2f}s): {type(e).__name__}: {e}"
                RESULTS[number] = line
                print(line)
                raise
            line = f"[PASS] {number:>2}. {title} ({time.perf_counter() - t0:.2f}s) {detail}".rstrip()
            RESULTS[number] = line
            print(line)
        return run
    return wrap


def load(name):
    return corpus.load(name)


def timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


@criterion(1, "first-version counterexample")
def test_c01_first_version():
    texts = corpus.text("prawitz-der1"), corpus.text("prawitz-der1-reduct")

    def run():
        a, b = (parse_derivation(t) for t in texts)
        return a, b, check_prawitz(a, "v1"), check_prawitz(b, "v1")

    (a, b, ra, rb), dt = timed(run)
    assert ra.valid
    assert not rb.valid
    star = get_at(b, (0, 0))
    assert isinstance(star, BoxI) and star.conclusion == parse_formula("[](A & B)")
    assert {v.path for v in rb.violations} == {(0, 0)}
    assert dt < 0.1, dt
    return f"violation at /0/0 ({dt * 1000:.1f} ms)"


@criterion(2, "second-version counterexample")
def test_c02_second_version():
    names = ("prawitz-der1", "prawitz-der1-reduct", "prawitz-box2", "prawitz-box2-reduct")

    def run():
        return [check_prawitz(parse_derivation(corpus.text(n)), "v2") for n in names]

    reps, dt = timed(run)
    assert reps[0].valid and reps[1].valid and reps[2].valid
    bad = reps[3]
    assert [v.path for v in bad.violations] == [()]
    assert "[]A & B" in bad.violations[0].reason and "not essentially modal" in bad.violations[0].reason
    assert dt < 0.1, dt
    return f"({dt * 1000:.1f} ms)"


@criterion(3, "third-version counterexample")
def test_c03_third_version():
    def run():
        return [check_prawitz(parse_derivation(corpus.text(n)), "v3") for n in ("medeiros-cex", "medeiros-cex-reduct")]

    (good, bad), dt = timed(run)
    assert good.valid and not bad.valid
    assert dt < 0.1, dt
    return f"({dt * 1000:.1f} ms)"


@criterion(4, "single-step golden reductions")
def test_c04_goldens():
    for stem, rule in (("box-detour", "BoxProper"), ("box-nested", "BoxPermute")):
        case, out = reduce_step(load(stem))
        assert str(case) == rule
        assert alpha_equal(out, load(stem + "-reduct")), stem


@criterion(5, "critical reduction lowers the degree")
def test_c05_critical_contract():
    t0 = time.perf_counter()
    samples = critical_samples(2024, 300, max_nodes=60) + critical_samples(2025, 300, max_nodes=60, min_nodes=15)
    assert len(samples) >= 500
    failures = []
    for d in samples:
        assert size(d) <= 60
        assert check_ns4(d).valid and is_simplified(d) and not trivial_formulas(d)
        g = subtree_degrees(d)[()]
        out = critical_reduce(d)
        if not subtree_degrees(out)[()] < g:
            failures.append(to_sexpr(d))
    dt = time.perf_counter() - t0
    assert not failures, failures[:3]
    assert dt < 30, dt
    sizes = [size(d) for d in samples]
    return f"{len(samples)} derivations, size mean {sum(sizes) / len(sizes):.1f} max {max(sizes)}"


def _negation_uses(d):
    botc = d.children[0]
    return sum(1 for _, n in iter_nodes(botc) if isinstance(n, Assume) and n.label == botc.label)


def _box_uses(d):
    return sum(1 for _, n in iter_nodes(d.minor) if isinstance(n, Assume) and n.label == d.label and n.formula == d.majors[0].conclusion)


@criterion(6, "duplicating fixtures normalize with decreasing index")
def test_c06_duplication():
    t0 = time.perf_counter()
    neg_copies = [n for n in corpus.names() if n.startswith("botc-copies-")]
    box_copies = [n for n in corpus.names() if n.startswith("botc-box-copies-")]
    assert {_negation_uses(load(n)) for n in neg_copies} == {2, 3, 4}
    assert {_box_uses(load(n)) for n in box_copies} == {2, 3, 4}
    grew = 0
    for name in neg_copies + box_copies:
        d = load(name)
        n, trace = normalize(d)
        assert is_normal(n), name
        assert trace.outer_strictly_decreasing(), name
        idx = [m.I for m in trace.outer]
        assert idx[0] == index(d) and idx[-1] == (0, 0)
        if name in neg_copies:
            # the one-step rewrite alone copies the maximal formula
            _, naive = reduce_step(d)
            if index(naive) > index(d):
                grew += 1
    dt = time.perf_counter() - t0
    assert grew == len(neg_copies)
    assert dt < 5, dt
    return f"{len(neg_copies) + len(box_copies)} fixtures, one-step index grew on {grew}"


@criterion(7, "driver soundness on generated derivations")
def test_c07_driver():
    t0 = time.perf_counter()
    ds = random_derivations(7, 1000, max_nodes=50)
    steps = 0
    for d in ds:
        assert size(d) <= 50
        seen = []
        n, trace = normalize(d, on_step=seen.append)
        steps += len(trace)
        assert is_normal(n)
        assert n.conclusion == d.conclusion
        assert set(open_assumptions(n)) <= set(open_assumptions(d))
        assert all(check_ns4(x).valid for x in seen)
    dt = time.perf_counter() - t0
    assert dt < 60, dt
    sizes = [size(d) for d in ds]
    return f"{len(ds)} derivations, size mean {sum(sizes) / len(sizes):.1f} max {max(sizes)}, {steps} steps"


@criterion(8, "analysis agrees with the brute-force oracle")
def test_c08_oracle():
    ds = random_derivations(8, 1000, max_nodes=80, depth=6)
    for d in ds:
        _, osegs = oracle_segments(d)
        nodes, omax = oracle_maximal(d)
        assert sorted(s.occurrences for s in segments(d)) == sorted(osegs)
        assert sorted(s.occurrences for s in maximal_segments(d)) == sorted(omax)
        assert derivation_degree(d) == max((printed_degree(nodes[s[0]].conclusion) for s in omax), default=0)
        assert tuple(index(d)) == oracle_index(d)
    total = sum(len(maximal_segments(d)) for d in ds)
    return f"{len(ds)} derivations, {total} maximal segments"


@criterion(9, "simplification contract")
def test_c09_simplify():
    inputs = list(corpus.load_all().values()) + random_derivations(9, 1000, max_nodes=50)
    for d in inputs:
        out = simplify(d)
        assert is_simplified(out) and not trivial_formulas(out)
        assert derivation_degree(out, validate=False) <= derivation_degree(d, validate=False)
    return f"{len(inputs)} derivations"


@criterion(10, "parser round trip and error spans")
def test_c10_round_trip():
    ds = list(corpus.load_all().values()) + random_derivations(10, 1000, max_nodes=50)
    for d in ds:
        assert parse_derivation(to_sexpr(d)) == d
    rng = random.Random(10)
    texts = [corpus.text(n) for n in corpus.names()]
    errors = 0
    for _ in range(1000):
        t = list(rng.choice(texts))
        for _ in range(rng.randint(1, 4)):
            i = rng.randrange(len(t) + 1)
            if rng.random() < 0.5 and i < len(t):
                del t[i]
            else:
                t.insert(i, rng.choice("()[]~&|-> 0123AZassumeboxI"))
        text = "".join(t)
        try:
            parse_derivation(text)
        except ParseError as e:
            errors += 1
            assert 0 <= e.span.start <= e.span.end <= len(text)
    return f"{len(ds)} round trips, {errors} malformed inputs with in-bounds spans"
