"""Random NS4-valid derivations, goal directed.

Box introductions draw their minor premiss in *closed* mode, where only the
discharged boxed assumptions (and assumptions introduced inside the minor)
may be used, so every generated tree satisfies the NS4 restriction by
construction.  Introductions are frequently followed by eliminations of
the same formula, which is what makes the output interesting to normalize.
"""

from __future__ import annotations

import random
from typing import List, Optional, Sequence, Tuple

from .analysis import critical_paths, is_simplified, trivial_formulas
from .derivation import (
    AndEL,
    AndER,
    AndI,
    Assume,
    BotC,
    BoxE,
    BoxI,
    ImpE,
    ImpI,
    OrE,
    OrIL,
    OrIR,
    detach,
    get_at,
    size,
)
from .formula import BOT, And, Atom, Bottom, Box, Formula, Imp, Or, is_neg, neg

Ctx = Tuple[Tuple[Formula, int], ...]


class Generator:
    def __init__(self, rng: random.Random, atoms: Sequence[str] = ("P", "Q", "R")):
        self.rng = rng
        self.atoms = [Atom(a) for a in atoms]
        self.counter = 0
        self.remaining = float("inf")

    def label(self) -> int:
        self.counter += 1
        return self.counter

    def formula(self, depth: int = 2) -> Formula:
        r = self.rng
        if depth <= 0 or r.random() < 0.3:
            return BOT if r.random() < 0.05 else r.choice(self.atoms)
        k = r.randrange(5)
        if k == 0:
            return And(self.formula(depth - 1), self.formula(depth - 1))
        if k == 1:
            return Or(self.formula(depth - 1), self.formula(depth - 1))
        if k == 2:
            return Imp(self.formula(depth - 1), self.formula(depth - 1))
        if k == 3:
            return neg(self.formula(depth - 1))
        return Box(self.formula(depth - 1))

    def derivation(self, depth: int = 4, goal: Optional[Formula] = None, budget: Optional[int] = None):
        """One derivation; ``budget`` roughly caps the number of search calls,
        after which only leaves are produced."""
        self.counter = 0
        self.remaining = float("inf") if budget is None else budget
        if goal is None:
            goal = self.formula(2)
        d = self.gen(goal, (), False, depth)
        assert d is not None  # open mode always succeeds
        return d

    # -- goal-directed search
    def gen(self, goal: Formula, ctx: Ctx, closed: bool, depth: int):
        self.remaining -= 1
        if self.remaining <= 0:
            depth = 0
        rules = self._rules(goal, ctx, closed, depth)
        self.rng.shuffle(rules)
        rules.sort(key=lambda wr: -wr[0] * self.rng.random())
        for _, rule in rules:
            d = rule()
            if d is not None:
                return d
        return self._fallback(goal, ctx, closed)

    def _fallback(self, goal, ctx, closed):
        hyps = [lab for f, lab in ctx if f == goal]
        if hyps:
            return Assume(goal, self.rng.choice(hyps))
        for f, lab in ctx:
            if f == Box(goal):
                return BoxE(Assume(f, lab))
            if isinstance(f, And) and f.left == goal:
                return AndEL(Assume(f, lab))
            if isinstance(f, And) and f.right == goal:
                return AndER(Assume(f, lab))
        if not closed:
            return Assume(goal)
        return None

    def _rules(self, goal, ctx, closed, depth) -> List[Tuple[float, object]]:
        r = self.rng
        out: List[Tuple[float, object]] = []
        hyps = [lab for f, lab in ctx if f == goal]
        if hyps:
            out.append((2.0, lambda: Assume(goal, r.choice(hyps))))
        if depth <= 0:
            return out
        g = lambda f, c=ctx, cl=closed: self.gen(f, c, cl, depth - 1)  # noqa: E731

        if not closed:
            out.append((0.6, lambda: Assume(goal)))
        if isinstance(goal, And):
            out.append((3.0, lambda: _both(AndI, g(goal.left), lambda: g(goal.right))))
        elif isinstance(goal, Or):
            out.append((1.5, lambda: _opt(lambda x: OrIL(x, goal.right), g(goal.left))))
            out.append((1.5, lambda: _opt(lambda x: OrIR(x, goal.left), g(goal.right))))
        elif isinstance(goal, Imp):
            def imp_i():
                lab = self.label()
                body = g(goal.right, ctx + ((goal.left, lab),))
                return None if body is None else ImpI(body, lab, goal.left)
            out.append((3.0, imp_i))
        elif isinstance(goal, Box):
            out.append((3.0, lambda: self._box_intro(goal, ctx, closed, depth)))
        if isinstance(goal, Bottom):
            negs = [f for f, _ in ctx if is_neg(f)]

            def bot_from_ctx():
                f = r.choice(negs)
                return _both(ImpE, g(f), lambda: g(f.left))
            if negs:
                out.append((3.0, bot_from_ctx))
            if not closed:
                def bot_open():
                    x = self.formula(1)
                    return _both(ImpE, g(neg(x)), lambda: g(x))
                out.append((1.0, bot_open))

        # eliminations through hypotheses
        for f, lab in ctx:
            if isinstance(f, Imp) and f.right == goal:
                out.append((1.5, lambda f=f, lab=lab: _opt(lambda x: ImpE(Assume(f, lab), x), g(f.left))))

        # detours: introduce something and eliminate it again
        if not closed or r.random() < 0.5:
            y = self.formula(1)
            out.append((1.0, lambda: _opt(AndEL, g(And(goal, y)))))
            out.append((1.0, lambda: _opt(AndER, g(And(y, goal)))))
            out.append((1.0, lambda: _opt(BoxE, g(Box(goal)))))
            x = self.formula(1)
            out.append((1.0, lambda: _both(ImpE, g(Imp(x, goal)), lambda: g(x))))
            if depth >= 2:
                out.append((0.8, lambda: self._or_elim(goal, ctx, closed, depth)))
        if not isinstance(goal, Bottom):
            def botc():
                lab = self.label()
                body = g(BOT, ctx + ((neg(goal), lab),))
                return None if body is None else BotC(body, lab, goal)
            out.append((1.2, botc))
        return out

    def _or_elim(self, goal, ctx, closed, depth):
        x, y = self.formula(1), self.formula(1)
        major = self.gen(Or(x, y), ctx, closed, depth - 1)
        if major is None:
            return None
        k1, k2 = self.label(), self.label()
        left = self.gen(goal, ctx + ((x, k1),), closed, depth - 1)
        if left is None:
            return None
        right = self.gen(goal, ctx + ((y, k2),), closed, depth - 1)
        if right is None:
            return None
        return OrE(major, left, k1, right, k2)

    def _box_intro(self, goal: Box, ctx, closed, depth):
        r = self.rng
        wanted: List[Formula] = []
        if r.random() < 0.6:
            wanted.append(goal)
        boxed_ctx = [f for f, _ in ctx if isinstance(f, Box)]
        for _ in range(r.randrange(3)):
            if boxed_ctx and r.random() < 0.5:
                wanted.append(r.choice(boxed_ctx))
            else:
                wanted.append(Box(self.formula(1)))
        if r.random() < 0.3:
            wanted.append(Box(goal.inner if not isinstance(goal.inner, Box) else goal.inner))
        formulas = list(dict.fromkeys(f for f in wanted if isinstance(f, Box)))
        majors = []
        for f in formulas:
            m = self.gen(f, ctx, closed, depth - 1)
            if m is None:
                continue
            majors.append(m)
        lab = self.label()
        inner_ctx = tuple((m.conclusion, lab) for m in majors)
        minor = self.gen(goal.inner, inner_ctx, True, depth - 1)
        if minor is None:
            return None
        return BoxI(tuple(majors), lab, minor)


def _opt(make, d):
    return None if d is None else make(d)


def _both(make, a, b_thunk):
    if a is None:
        return None
    b = b_thunk()
    return None if b is None else make(a, b)


def random_derivations(seed: int, count: int, max_nodes: int = 50, depth: int = 8):
    """``count`` NS4-valid derivations with at most ``max_nodes`` nodes."""
    rng = random.Random(seed)
    gen = Generator(rng)
    out = []
    while len(out) < count:
        d = gen.derivation(depth=rng.randint(2, depth), budget=rng.randint(max_nodes // 4, 2 * max_nodes))
        if size(d) <= max_nodes:
            out.append(d)
    return out


def critical_samples(seed: int, count: int, max_nodes: int = 60, min_nodes: int = 1):
    """Critical, simplified, trivial-free derivations cut out of random ones."""
    from .reduction import simplify

    rng = random.Random(seed)
    gen = Generator(rng)
    out = []
    while len(out) < count:
        d = simplify(gen.derivation(depth=rng.randint(2, 8), budget=rng.randint(10, 2 * max_nodes)))
        for p in critical_paths(d):
            sub = detach(get_at(d, p))
            if min_nodes <= size(sub) <= max_nodes and is_simplified(sub) and not trivial_formulas(sub):
                out.append(sub)
                if len(out) == count:
                    break
    return out
