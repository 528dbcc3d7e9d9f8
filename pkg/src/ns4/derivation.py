"""Derivation trees for NS4 natural deduction and label bookkeeping.

Every node carries its conclusion, computed (and checked) at construction,
so a constructed tree always satisfies conclusion coherence.  Discharge
coherence is a property of the whole tree and lives in :mod:`ns4.checker`.

Labels bind lexically: an ``Assume`` with label ``k`` is discharged by the
nearest ancestor that binds ``k`` in the subtree holding the assumption
(``ImpI``/``BotC`` bind in their body, ``OrE`` binds its two labels in the
respective cases, ``BoxI`` binds in its minor premiss only).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Tuple

from .formula import BOT, And, Bottom, Box, Formula, Imp, Or, neg

Path = Tuple[int, ...]


class StructuralError(ValueError):
    """A node whose premisses do not fit its rule."""

    def __init__(self, rule: str, reason: str, path: Path = ()):
        super().__init__(f"{rule}: {reason}")
        self.rule = rule
        self.reason = reason
        self.path = path


class SubstitutionError(ValueError):
    pass


def _set(obj, name, value):
    object.__setattr__(obj, name, value)


@dataclass(frozen=True)
class Assume:
    formula: Formula
    label: Optional[int] = None
    conclusion: Formula = field(init=False, repr=False, compare=False)

    rule = "assume"

    def __post_init__(self):
        if self.label is not None and self.label < 1:
            raise StructuralError(self.rule, "labels must be positive integers")
        _set(self, "conclusion", self.formula)

    @property
    def children(self):
        return ()

    def rebuild(self, children):
        return self


@dataclass(frozen=True)
class AndI:
    left: "Derivation"
    right: "Derivation"
    conclusion: Formula = field(init=False, repr=False, compare=False)

    rule = "andI"

    def __post_init__(self):
        _set(self, "conclusion", And(self.left.conclusion, self.right.conclusion))

    @property
    def children(self):
        return (self.left, self.right)

    def rebuild(self, children):
        return AndI(*children)


@dataclass(frozen=True)
class AndEL:
    premiss: "Derivation"
    conclusion: Formula = field(init=False, repr=False, compare=False)

    rule = "andEl"

    def __post_init__(self):
        c = self.premiss.conclusion
        if not isinstance(c, And):
            raise StructuralError(self.rule, f"major premiss must be a conjunction, got {c}")
        _set(self, "conclusion", c.left)

    @property
    def children(self):
        return (self.premiss,)

    def rebuild(self, children):
        return AndEL(*children)


@dataclass(frozen=True)
class AndER:
    premiss: "Derivation"
    conclusion: Formula = field(init=False, repr=False, compare=False)

    rule = "andEr"

    def __post_init__(self):
        c = self.premiss.conclusion
        if not isinstance(c, And):
            raise StructuralError(self.rule, f"major premiss must be a conjunction, got {c}")
        _set(self, "conclusion", c.right)

    @property
    def children(self):
        return (self.premiss,)

    def rebuild(self, children):
        return AndER(*children)


@dataclass(frozen=True)
class OrIL:
    premiss: "Derivation"
    other: Formula
    conclusion: Formula = field(init=False, repr=False, compare=False)

    rule = "orIl"

    def __post_init__(self):
        _set(self, "conclusion", Or(self.premiss.conclusion, self.other))

    @property
    def children(self):
        return (self.premiss,)

    def rebuild(self, children):
        return OrIL(children[0], self.other)


@dataclass(frozen=True)
class OrIR:
    premiss: "Derivation"
    other: Formula
    conclusion: Formula = field(init=False, repr=False, compare=False)

    rule = "orIr"

    def __post_init__(self):
        _set(self, "conclusion", Or(self.other, self.premiss.conclusion))

    @property
    def children(self):
        return (self.premiss,)

    def rebuild(self, children):
        return OrIR(children[0], self.other)


@dataclass(frozen=True)
class OrE:
    major: "Derivation"
    left_case: "Derivation"
    left_label: int
    right_case: "Derivation"
    right_label: int
    conclusion: Formula = field(init=False, repr=False, compare=False)

    rule = "orE"

    def __post_init__(self):
        c = self.major.conclusion
        if not isinstance(c, Or):
            raise StructuralError(self.rule, f"major premiss must be a disjunction, got {c}")
        if self.left_case.conclusion != self.right_case.conclusion:
            raise StructuralError(
                self.rule,
                f"minor premisses differ: {self.left_case.conclusion} vs {self.right_case.conclusion}",
            )
        _set(self, "conclusion", self.left_case.conclusion)

    @property
    def children(self):
        return (self.major, self.left_case, self.right_case)

    def rebuild(self, children):
        m, l, r = children
        return OrE(m, l, self.left_label, r, self.right_label)


@dataclass(frozen=True)
class ImpI:
    body: "Derivation"
    label: int
    antecedent: Formula
    conclusion: Formula = field(init=False, repr=False, compare=False)

    rule = "impI"

    def __post_init__(self):
        _set(self, "conclusion", Imp(self.antecedent, self.body.conclusion))

    @property
    def children(self):
        return (self.body,)

    def rebuild(self, children):
        return ImpI(children[0], self.label, self.antecedent)


@dataclass(frozen=True)
class ImpE:
    major: "Derivation"
    minor: "Derivation"
    conclusion: Formula = field(init=False, repr=False, compare=False)

    rule = "impE"

    def __post_init__(self):
        c = self.major.conclusion
        if not isinstance(c, Imp):
            raise StructuralError(self.rule, f"major premiss must be an implication, got {c}")
        if self.minor.conclusion != c.left:
            raise StructuralError(
                self.rule,
                f"minor premiss must be {c.left}, got {self.minor.conclusion}",
            )
        _set(self, "conclusion", c.right)

    @property
    def children(self):
        return (self.major, self.minor)

    def rebuild(self, children):
        return ImpE(*children)


@dataclass(frozen=True)
class BotC:
    body: "Derivation"
    label: int
    target: Formula
    conclusion: Formula = field(init=False, repr=False, compare=False)

    rule = "botC"

    def __post_init__(self):
        if not isinstance(self.body.conclusion, Bottom):
            raise StructuralError(self.rule, f"premiss must be bot, got {self.body.conclusion}")
        _set(self, "conclusion", self.target)

    @property
    def children(self):
        return (self.body,)

    def rebuild(self, children):
        return BotC(children[0], self.label, self.target)


@dataclass(frozen=True)
class BoxE:
    major: "Derivation"
    conclusion: Formula = field(init=False, repr=False, compare=False)

    rule = "boxE"

    def __post_init__(self):
        c = self.major.conclusion
        if not isinstance(c, Box):
            raise StructuralError(self.rule, f"major premiss must be Box, got {c}")
        _set(self, "conclusion", c.inner)

    @property
    def children(self):
        return (self.major,)

    def rebuild(self, children):
        return BoxE(*children)


@dataclass(frozen=True)
class BoxI:
    """Vector box introduction; ``majors == ()`` encodes the unary rule."""

    majors: Tuple["Derivation", ...]
    label: int
    minor: "Derivation"
    conclusion: Formula = field(init=False, repr=False, compare=False)

    rule = "boxI"

    def __post_init__(self):
        _set(self, "majors", tuple(self.majors))
        _set(self, "conclusion", Box(self.minor.conclusion))

    @property
    def children(self):
        return self.majors + (self.minor,)

    def rebuild(self, children):
        children = tuple(children)
        return BoxI(children[:-1], self.label, children[-1])


Derivation = (Assume, AndI, AndEL, AndER, OrIL, OrIR, OrE, ImpI, ImpE, BotC, BoxE, BoxI)

INTRO_RULES = (AndI, OrIL, OrIR, ImpI, BoxI)
ELIM_RULES = (AndEL, AndER, OrE, ImpE, BoxE)


def conclusion(d) -> Formula:
    return d.conclusion


def binder_labels(node) -> Tuple[Tuple[int, int], ...]:
    """(label, child index it scopes over) pairs bound by ``node``."""
    if isinstance(node, (ImpI, BotC)):
        return ((node.label, 0),)
    if isinstance(node, OrE):
        return ((node.left_label, 1), (node.right_label, 2))
    if isinstance(node, BoxI):
        return ((node.label, len(node.majors)),)
    return ()


# -- traversal ----------------------------------------------------------------


def iter_nodes(d, prefix: Path = ()) -> Iterator[Tuple[Path, object]]:
    """Preorder (path, node) pairs."""
    stack = [(prefix, d)]
    while stack:
        path, node = stack.pop()
        yield path, node
        kids = node.children
        for i in range(len(kids) - 1, -1, -1):
            stack.append((path + (i,), kids[i]))


def get_at(d, path: Path):
    for i in path:
        d = d.children[i]
    return d


def replace_at(d, path: Path, new):
    if not path:
        return new
    kids = list(d.children)
    kids[path[0]] = replace_at(kids[path[0]], path[1:], new)
    return d.rebuild(kids)


def size(d) -> int:
    return sum(1 for _ in iter_nodes(d))


def labels(d) -> set:
    """Every label occurring in ``d``, on binders and on assumptions."""
    out = set()
    for _, node in iter_nodes(d):
        if isinstance(node, Assume):
            if node.label is not None:
                out.add(node.label)
        else:
            out.update(lab for lab, _ in binder_labels(node))
    return out


def bindings(d) -> Dict[Path, Path]:
    """Map each bound assumption leaf to the path of its discharging node."""
    out: Dict[Path, Path] = {}

    def walk(node, path, scope):
        if isinstance(node, Assume):
            if node.label is not None and node.label in scope:
                out[path] = scope[node.label]
            return
        binds = binder_labels(node)
        for i, child in enumerate(node.children):
            inner = scope
            for lab, idx in binds:
                if idx == i:
                    inner = {**inner, lab: path}
            walk(child, path + (i,), inner)

    walk(d, (), {})
    return out


def open_leaves(d) -> List[Tuple[Path, Formula]]:
    bound = bindings(d)
    return [(p, n.formula) for p, n in iter_nodes(d) if isinstance(n, Assume) and p not in bound]


def open_assumptions(d) -> Counter:
    """Multiset of formulas of the undischarged assumptions of ``d``."""
    return Counter(f for _, f in open_leaves(d))


def free_labels(d) -> set:
    bound = bindings(d)
    return {
        n.label
        for p, n in iter_nodes(d)
        if isinstance(n, Assume) and n.label is not None and p not in bound
    }


# -- relabelling and grafting -------------------------------------------------


def map_binders(d, rename: Callable[[int], int]):
    """Rename every binder of ``d`` (and the leaves it binds) through ``rename``.

    ``rename`` is called once per binding occurrence, in preorder.
    """

    def walk(node, scope):
        if isinstance(node, Assume):
            if node.label is not None and node.label in scope:
                return Assume(node.formula, scope[node.label])
            return node
        binds = binder_labels(node)
        new_labels = {idx_lab: rename(idx_lab[0]) for idx_lab in binds}
        kids = []
        for i, child in enumerate(node.children):
            inner = scope
            for lab, idx in binds:
                if idx == i:
                    inner = {**inner, lab: new_labels[(lab, idx)]}
            kids.append(walk(child, inner))
        return _with_labels(node.rebuild(kids), [new_labels[b] for b in binds])

    return walk(d, {})


def _with_labels(node, new):
    if isinstance(node, ImpI):
        return ImpI(node.body, new[0], node.antecedent)
    if isinstance(node, BotC):
        return BotC(node.body, new[0], node.target)
    if isinstance(node, OrE):
        return OrE(node.major, node.left_case, new[0], node.right_case, new[1])
    if isinstance(node, BoxI):
        return BoxI(node.majors, new[0], node.minor)
    return node


class LabelSupply:
    """Hands out labels never seen before by this supply."""

    def __init__(self, avoid: Iterable[int] = ()):
        self.next = max(avoid, default=0) + 1

    def reserve(self, avoid: Iterable[int]):
        self.next = max(self.next, max(avoid, default=0) + 1)

    def __call__(self, _old=None) -> int:
        lab = self.next
        self.next += 1
        return lab


def fresh_relabel(d, avoid: Iterable[int] = (), supply: Optional[LabelSupply] = None):
    """Copy of ``d`` whose binder labels are fresh w.r.t. ``avoid``.

    Free labels are kept, so bindings to nodes outside ``d`` survive.
    """
    if supply is None:
        supply = LabelSupply()
    supply.reserve(set(avoid) | labels(d))
    return map_binders(d, supply)


def relabel_canonical(d):
    """Number binders 1, 2, ... in preorder, skipping labels that occur free."""
    taken = free_labels(d)
    counter = [0]

    def rename(_old):
        counter[0] += 1
        while counter[0] in taken:
            counter[0] += 1
        return counter[0]

    return map_binders(d, rename)


def alpha_equal(a, b) -> bool:
    """Structural equality up to renaming of bound labels."""
    return relabel_canonical(a) == relabel_canonical(b)


def graft(d, label: int, by_formula: Dict[Formula, object], supply: Optional[LabelSupply] = None):
    """Replace every free ``label``-labelled assumption of ``d`` by a fresh copy
    of the derivation registered for its formula."""
    if supply is None:
        supply = LabelSupply()
    supply.reserve(labels(d))
    for r in by_formula.values():
        supply.reserve(labels(r))
    bound = bindings(d)
    targets = [
        p
        for p, n in iter_nodes(d)
        if isinstance(n, Assume) and n.label == label and p not in bound
    ]
    for p in targets:
        leaf = get_at(d, p)
        repl = by_formula.get(leaf.formula)
        if repl is None:
            raise SubstitutionError(f"no replacement for [{leaf.formula}]^{label}")
        if repl.conclusion != leaf.formula:
            raise SubstitutionError(
                f"replacement concludes {repl.conclusion}, assumption is {leaf.formula}"
            )
        d = replace_at(d, p, map_binders(repl, supply))
    return d


def substitute(d, label: int, replacement, supply: Optional[LabelSupply] = None):
    """Graft ``replacement`` onto every free ``label``-labelled assumption."""
    bound = bindings(d)
    for p, n in iter_nodes(d):
        if isinstance(n, Assume) and n.label == label and p not in bound:
            if n.formula != replacement.conclusion:
                raise SubstitutionError(
                    f"cannot graft a derivation of {replacement.conclusion} onto [{n.formula}]^{label}"
                )
    return graft(d, label, {replacement.conclusion: replacement}, supply)


def detach(d):
    """Drop labels of assumptions bound outside ``d`` (they become open)."""
    bound = bindings(d)
    out = d
    for p, n in list(iter_nodes(d)):
        if isinstance(n, Assume) and n.label is not None and p not in bound:
            out = replace_at(out, p, Assume(n.formula))
    return out


def rule_name(node) -> str:
    return node.rule


__all__ = [
    "Assume", "AndI", "AndEL", "AndER", "OrIL", "OrIR", "OrE", "ImpI", "ImpE",
    "BotC", "BoxE", "BoxI", "Derivation", "Path", "StructuralError",
    "SubstitutionError", "LabelSupply", "INTRO_RULES", "ELIM_RULES",
    "alpha_equal", "bindings", "binder_labels", "conclusion", "detach",
    "fresh_relabel", "free_labels", "get_at", "graft", "iter_nodes", "labels",
    "map_binders", "open_assumptions", "open_leaves", "relabel_canonical",
    "replace_at", "size", "substitute", "neg", "BOT",
]
