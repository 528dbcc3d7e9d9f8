"""Segments, maximal segments and the measures used by the normalizer."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, NamedTuple, Optional, Tuple

from .checker import check
from .derivation import (
    ELIM_RULES,
    INTRO_RULES,
    Assume,
    BotC,
    BoxI,
    ImpE,
    OrE,
    Path,
    bindings,
    iter_nodes,
)
from .formula import Bottom, Formula, degree, neg


class AnalysisError(ValueError):
    pass


@dataclass(frozen=True)
class Segment:
    occurrences: Tuple[Path, ...]
    formula: Formula

    @property
    def length(self) -> int:
        return len(self.occurrences)

    @property
    def degree(self) -> int:
        return degree(self.formula)


class Index(NamedTuple):
    d: int
    s: int

    def __str__(self) -> str:
        return f"({self.d},{self.s})"


class Measures(NamedTuple):
    G: int
    I: Index
    top_count: int
    length: int

    def __str__(self) -> str:
        return f"G={self.G} I={self.I} #G={self.top_count} len={self.length}"


class _Tree:
    """Flattened view of a derivation with the segment link relation."""

    def __init__(self, d):
        self.nodes: Dict[Path, object] = dict(iter_nodes(d))
        bound = bindings(d)
        by_binder: Dict[Path, List[Path]] = {}
        for leaf, b in bound.items():
            by_binder.setdefault(b, []).append(leaf)
        self.succ: Dict[Path, List[Path]] = {}
        has_pred = set()
        for path, node in self.nodes.items():
            if isinstance(node, OrE):
                for i in (1, 2):
                    self.succ[path + (i,)] = [path]
                has_pred.add(path)
            elif isinstance(node, BoxI):
                leaves = sorted(by_binder.get(path, ()))
                for i, major in enumerate(node.majors):
                    targets = [p for p in leaves if self.nodes[p].formula == major.conclusion]
                    self.succ[path + (i,)] = targets
                    has_pred.update(targets)
        self.starts = [p for p in self.nodes if p not in has_pred]

    def segments(self) -> List[Segment]:
        out = []
        for start in sorted(self.starts):
            stack = [(start,)]
            while stack:
                chain = stack.pop()
                nxt = self.succ.get(chain[-1], [])
                if not nxt:
                    out.append(Segment(chain, self.nodes[start].conclusion))
                for p in reversed(nxt):
                    stack.append(chain + (p,))
        return out

    def is_maximal(self, seg: Segment) -> bool:
        first = self.nodes[seg.occurrences[0]]
        if not isinstance(first, INTRO_RULES + (BotC,)):
            return False
        last = seg.occurrences[-1]
        if not last or last[-1] != 0:
            return False
        return isinstance(self.nodes[last[:-1]], ELIM_RULES)


def _validate(d, validate):
    if validate:
        rep = check(d, "ns4" if validate is True else validate)
        if not rep.valid:
            raise AnalysisError("analysis refused, derivation is invalid: " + str(rep.violations[0]))


def segments(d, validate=True) -> List[Segment]:
    _validate(d, validate)
    return _Tree(d).segments()


def maximal_segments(d, validate=True) -> List[Segment]:
    _validate(d, validate)
    t = _Tree(d)
    return [s for s in t.segments() if t.is_maximal(s)]


def derivation_degree(d, validate=True) -> int:
    return max((s.degree for s in maximal_segments(d, validate)), default=0)


def _index(maxsegs) -> Index:
    g = max((s.degree for s in maxsegs), default=0)
    if not maxsegs:
        return Index(0, 0)
    return Index(g, sum(s.length for s in maxsegs if s.degree == g))


def index(d, validate=True) -> Index:
    return _index(maximal_segments(d, validate))


def is_normal(d, validate=True) -> bool:
    return not maximal_segments(d, validate)


def count_top_degree_maximal(d, validate=True) -> int:
    ms = maximal_segments(d, validate)
    g = max((s.degree for s in ms), default=0)
    return sum(1 for s in ms if s.length == 1 and s.degree == g)


def length(d) -> int:
    return sum(1 for _ in iter_nodes(d))


def measures(d, validate=False) -> Measures:
    _validate(d, validate)
    t = _Tree(d)
    ms = [s for s in t.segments() if t.is_maximal(s)]
    idx = _index(ms)
    top = sum(1 for s in ms if s.length == 1 and s.degree == idx.d)
    return Measures(idx.d, idx, top, len(t.nodes))


def _anchor(seg: Segment) -> Path:
    paths = list(seg.occurrences) + [seg.occurrences[-1][:-1]]
    anchor = paths[0]
    for p in paths[1:]:
        k = 0
        while k < len(anchor) and k < len(p) and anchor[k] == p[k]:
            k += 1
        anchor = anchor[:k]
    return anchor


def subtree_degrees(d) -> Dict[Path, int]:
    """Degree of every subderivation of ``d``, each taken on its own.

    A maximal segment of the subderivation at ``n`` is exactly a maximal
    segment of ``d`` whose occurrences, and the elimination ending it, all lie
    at or above ``n``; so each segment is charged to its lowest common node.
    """
    t = _Tree(d)
    best: Dict[Path, int] = {}
    for s in t.segments():
        if t.is_maximal(s):
            a = _anchor(s)
            best[a] = max(best.get(a, 0), s.degree)
    out: Dict[Path, int] = {}
    for path in sorted(t.nodes, key=len, reverse=True):
        g = best.get(path, 0)
        node = t.nodes[path]
        for i in range(len(node.children)):
            g = max(g, out[path + (i,)])
        out[path] = g
    return out


def critical_paths(d, degree_at: Optional[int] = None) -> List[Path]:
    """Roots of critical subderivations of degree ``degree_at`` (default: G(d)).

    Ordered deepest first, then left to right.
    """
    deg = subtree_degrees(d)
    g = deg[()] if degree_at is None else degree_at
    if g <= 0:
        return []
    nodes = dict(iter_nodes(d))
    out = []
    for path, node in nodes.items():
        if deg[path] != g:
            continue
        if all(deg[path + (i,)] < g for i in range(len(node.children))):
            out.append(path)
    out.sort(key=lambda p: (-len(p), p))
    return out


def maximal_premisses(d, validate=False) -> List[Tuple[int, Segment]]:
    """(premiss index, segment) for root premisses lying on a maximal segment."""
    _validate(d, validate)
    t = _Tree(d)
    out = []
    for s in t.segments():
        if not t.is_maximal(s):
            continue
        for occ in s.occurrences:
            if len(occ) == 1:
                out.append((occ[0], s))
    return out


def is_critical(d, validate=False) -> bool:
    _validate(d, validate)
    deg = subtree_degrees(d)
    g = deg[()]
    if g == 0:
        return False
    if any(deg[(i,)] >= g for i in range(len(d.children))):
        return False
    return any(s.degree == g for _, s in maximal_premisses(d))


def is_simplified(d) -> bool:
    for _, node in iter_nodes(d):
        if isinstance(node, OrE) and not isinstance(node.conclusion, Bottom):
            return False
    return True


def trivial_formulas(d) -> List[Path]:
    """Paths of bot_c conclusions that are minor premisses of an implication
    elimination whose major premiss is the assumption of their negation."""
    out = []
    for path, node in iter_nodes(d):
        if (
            isinstance(node, ImpE)
            and isinstance(node.minor, BotC)
            and isinstance(node.major, Assume)
            and node.major.formula == neg(node.minor.conclusion)
        ):
            out.append(path + (1,))
    return out
