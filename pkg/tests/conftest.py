import random

from hypothesis import strategies as st

from ns4 import corpus
from ns4.generate import Generator


@st.composite
def derivations(draw, max_nodes=50, depth=6):
    seed = draw(st.integers(0, 2**32 - 1))
    rng = random.Random(seed)
    gen = Generator(rng)
    while True:
        d = gen.derivation(depth=rng.randint(1, depth), budget=rng.randint(4, 2 * max_nodes))
        if sum(1 for _ in _nodes(d)) <= max_nodes:
            return d


def _nodes(d):
    yield d
    for c in d.children:
        yield from _nodes(c)


def load(name):
    return corpus.load(name)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
