"""Reductions and the normalization driver for NS4 derivations.

The driver keeps derivations simplified (every disjunction elimination
concludes bot) and free of trivial formulas, then repeatedly rewrites a
critical subderivation of top degree until no maximal segment is left.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

from .analysis import (
    Measures,
    critical_paths,
    is_critical,
    is_simplified,
    maximal_premisses,
    measures,
    subtree_degrees,
    trivial_formulas,
)
from .checker import check_ns4
from .derivation import (
    ELIM_RULES,
    AndEL,
    AndER,
    AndI,
    Assume,
    BotC,
    BoxE,
    BoxI,
    ImpE,
    ImpI,
    LabelSupply,
    OrE,
    OrIL,
    OrIR,
    Path,
    get_at,
    graft,
    iter_nodes,
    labels,
    map_binders,
    relabel_canonical,
    replace_at,
    size,
    substitute,
)
from .formula import Bottom, neg


class ReductionCase(str, enum.Enum):
    CONJ_PROPER = "ConjProper"
    IMP_PROPER = "ImpProper"
    BOX_PROPER = "BoxProper"
    BOX_PERMUTE = "BoxPermute"
    DISJ_PROPER = "DisjProper"
    BOTC_AND_E = "BotcAndE"
    BOTC_IMP_E = "BotcImpE"
    BOTC_BOX_E = "BotcBoxE"
    BOTC_BOX_I = "BotcBoxI"
    BOTC_BOTTOM_CONCL = "BotcBottomConcl"
    BOTC_MINOR_BOTTOM = "BotcMinorBottom"

    def __str__(self) -> str:
        return self.value


class ReductionError(ValueError):
    pass


class NotARedex(ReductionError):
    pass


class ClassificationError(ReductionError):
    pass


class InvalidDerivation(ReductionError):
    def __init__(self, report):
        super().__init__("derivation is not NS4-valid: " + "; ".join(map(str, report.violations)))
        self.report = report


class BudgetExhausted(RuntimeError):
    def __init__(self, trace: "MeasureTrace", derivation):
        super().__init__(f"step budget exhausted after {len(trace.steps)} steps")
        self.trace = trace
        self.derivation = derivation


# -- proper reductions ---------------------------------------------------------


def reduce_conjunction(d):
    if isinstance(d, AndEL) and isinstance(d.premiss, AndI):
        return d.premiss.left
    if isinstance(d, AndER) and isinstance(d.premiss, AndI):
        return d.premiss.right
    raise NotARedex("expected a conjunction elimination over a conjunction introduction")


def reduce_implication(d):
    if not (isinstance(d, ImpE) and isinstance(d.major, ImpI)):
        raise NotARedex("expected an implication elimination over an implication introduction")
    intro = d.major
    return substitute(intro.body, intro.label, d.minor, LabelSupply(labels(d)))


def reduce_disjunction(d):
    if not isinstance(d, OrE):
        raise NotARedex("expected a disjunction elimination")
    if isinstance(d.major, OrIL):
        case, lab = d.left_case, d.left_label
    elif isinstance(d.major, OrIR):
        case, lab = d.right_case, d.right_label
    else:
        raise NotARedex("major premiss of the disjunction elimination is not introduced")
    return substitute(case, lab, d.major.premiss, LabelSupply(labels(d)))


def reduce_box_proper(d):
    """Box elimination over a box introduction: graft each major onto the
    assumptions it discharged and drop the detour."""
    if not (isinstance(d, BoxE) and isinstance(d.major, BoxI)):
        raise NotARedex("expected a box elimination over a box introduction")
    intro = d.major
    by_formula = {m.conclusion: m for m in intro.majors}
    return graft(intro.minor, intro.label, by_formula, LabelSupply(labels(d)))


def permute_box(d, major: Optional[int] = None):
    """Move a box introduction that feeds a major premiss of another box
    introduction into the latter's minor premiss.

    Duplicate majors that would arise are merged into one assumption class.
    """
    if not isinstance(d, BoxI):
        raise NotARedex("expected a box introduction")
    if major is None:
        major = next((i for i, m in enumerate(d.majors) if isinstance(m, BoxI)), None)
    if major is None or not isinstance(d.majors[major], BoxI):
        raise NotARedex("no major premiss is concluded by a box introduction")
    inner = d.majors[major]
    supply = LabelSupply(labels(d))
    lab = supply()

    new_majors = []
    seen = set()
    for m in inner.majors + d.majors[:major] + d.majors[major + 1:]:
        if m.conclusion not in seen:
            seen.add(m.conclusion)
            new_majors.append(m)

    relocated = BoxI(tuple(Assume(m.conclusion, lab) for m in inner.majors), inner.label, inner.minor)
    mapping = {m.conclusion: Assume(m.conclusion, lab) for m in d.majors}
    mapping[inner.conclusion] = relocated
    minor = graft(d.minor, d.label, mapping, supply)
    return BoxI(tuple(new_majors), lab, minor)


# -- classical reductions -------------------------------------------------------


def _botc_uses(botc: BotC) -> Tuple[List[Path], List[Path]]:
    """Assumptions discharged by ``botc``: (majors of impE, other uses)."""
    majors, others = [], []
    for path, node in iter_nodes(botc.body, (0,)):
        if isinstance(node, Assume) and node.label == botc.label:
            parent = get_at(botc, path[:-1])
            if isinstance(parent, ImpE) and path[-1] == 0:
                majors.append(path)
            else:
                others.append(path)
    return majors, others


def reduce_botc(d, premiss: int):
    """Push the rule below a bot_c conclusion up to the uses of its
    discharged negation.

    Where ``~F`` is the major premiss of an implication elimination with
    minor ``F``, the rule is applied to that ``F`` directly; any other use of
    ``~F`` is replaced by a derivation of ``~F`` from the fresh assumption
    ``~C`` (omitted when the conclusion ``C`` is bot).
    """
    botc = d.children[premiss]
    if not isinstance(botc, BotC):
        raise NotARedex("premiss is not a bot_c conclusion")
    target, lab = botc.target, botc.label
    concl = d.conclusion
    bottom = isinstance(concl, Bottom)
    supply = LabelSupply(labels(d))
    neg_lab = None if bottom else supply()

    def rebuild(x):
        kids = list(d.children)
        kids[premiss] = x
        return map_binders(d.rebuild(kids), supply)

    def close(x):
        return x if bottom else ImpE(Assume(neg(concl), neg_lab), x)

    def walk(n):
        if isinstance(n, ImpE) and isinstance(n.major, Assume) and n.major.label == lab:
            return close(rebuild(walk(n.minor)))
        if isinstance(n, Assume):
            if n.label == lab:
                m = supply()
                return ImpI(close(rebuild(Assume(target, m))), m, target)
            return n
        return n.rebuild([walk(c) for c in n.children])

    body = walk(botc.body)
    return body if bottom else BotC(body, neg_lab, concl)


# -- simplification --------------------------------------------------------------


def _first_open_disjunction(d) -> Optional[Path]:
    best = None
    for path, node in iter_nodes(d):
        if isinstance(node, OrE) and not isinstance(node.conclusion, Bottom):
            if best is None or (len(path), path) < (len(best), best):
                best = path
    return best


def _simplify_disjunction(d, path: Path):
    supply = LabelSupply(labels(d))
    node = get_at(d, path)
    while path:
        parent = get_at(d, path[:-1])
        idx = path[-1]
        if not (
            (isinstance(parent, ELIM_RULES) and idx == 0)
            or (isinstance(parent, BoxI) and idx < len(parent.majors))
        ):
            break

        def into(case, parent=parent, idx=idx):
            kids = list(parent.children)
            kids[idx] = case
            return map_binders(parent.rebuild(kids), supply)

        node = OrE(node.major, into(node.left_case), node.left_label,
                   into(node.right_case), node.right_label)
        path = path[:-1]
        d = replace_at(d, path, node)
    if not isinstance(node.conclusion, Bottom):
        c = node.conclusion
        j = supply()
        node = BotC(
            OrE(node.major,
                ImpE(Assume(neg(c), j), node.left_case), node.left_label,
                ImpE(Assume(neg(c), j), node.right_case), node.right_label),
            j, c,
        )
        d = replace_at(d, path, node)
    return d


def _drop_trivial(d, impe_path: Path):
    node = get_at(d, impe_path)
    botc = node.minor
    new = substitute(botc.body, botc.label, node.major, LabelSupply(labels(d)))
    return replace_at(d, impe_path, new)


def simplify(d, max_rounds: int = 100_000):
    """Rewrite ``d`` so that every disjunction elimination concludes bot and
    no trivial formula remains.  Returns ``d`` itself when nothing changes.
    """
    changed = False
    for _ in range(max_rounds):
        p = _first_open_disjunction(d)
        if p is not None:
            d = _simplify_disjunction(d, p)
            changed = True
            continue
        triv = trivial_formulas(d)
        if triv:
            d = _drop_trivial(d, triv[0][:-1])
            changed = True
            continue
        return relabel_canonical(d) if changed else d
    raise ReductionError("simplification did not terminate")


# -- critical derivations --------------------------------------------------------

_PROPER = {
    (AndEL, AndI): ReductionCase.CONJ_PROPER,
    (AndER, AndI): ReductionCase.CONJ_PROPER,
    (ImpE, ImpI): ReductionCase.IMP_PROPER,
    (BoxE, BoxI): ReductionCase.BOX_PROPER,
    (OrE, OrIL): ReductionCase.DISJ_PROPER,
    (OrE, OrIR): ReductionCase.DISJ_PROPER,
}

_BOTC = {
    AndEL: ReductionCase.BOTC_AND_E,
    AndER: ReductionCase.BOTC_AND_E,
    ImpE: ReductionCase.BOTC_IMP_E,
    BoxE: ReductionCase.BOTC_BOX_E,
}


def _top_premiss(d) -> int:
    g = subtree_degrees(d)[()]
    found = sorted(i for i, s in maximal_premisses(d) if s.degree == g and g > 0)
    if not found:
        raise ClassificationError("the last inference has no maximal premiss of top degree")
    return found[0]


def classify_critical(d) -> Tuple[ReductionCase, int]:
    """Case of a critical derivation and the premiss index it acts on."""
    idx = _top_premiss(d)
    prem = d.children[idx]
    if isinstance(d, ELIM_RULES) and idx == 0:
        case = _PROPER.get((type(d), type(prem)))
        if case is not None:
            return case, idx
        if isinstance(prem, BotC):
            if _botc_uses(prem)[1]:
                return ReductionCase.BOTC_MINOR_BOTTOM, idx
            if isinstance(d.conclusion, Bottom):
                return ReductionCase.BOTC_BOTTOM_CONCL, idx
            if type(d) in _BOTC:
                return _BOTC[type(d)], idx
    elif isinstance(d, BoxI) and idx < len(d.majors):
        if isinstance(prem, BoxI):
            return ReductionCase.BOX_PERMUTE, idx
        if isinstance(prem, BotC):
            if _botc_uses(prem)[1]:
                return ReductionCase.BOTC_MINOR_BOTTOM, idx
            return ReductionCase.BOTC_BOX_I, idx
    raise ClassificationError(
        f"no reduction applies to premiss {idx} ({prem.rule}) of {d.rule}"
    )


def reduce_step(d) -> Tuple[ReductionCase, object]:
    """Apply the one rewrite selected by :func:`classify_critical`."""
    case, idx = classify_critical(d)
    if case is ReductionCase.CONJ_PROPER:
        out = reduce_conjunction(d)
    elif case is ReductionCase.IMP_PROPER:
        out = reduce_implication(d)
    elif case is ReductionCase.BOX_PROPER:
        out = reduce_box_proper(d)
    elif case is ReductionCase.DISJ_PROPER:
        out = reduce_disjunction(d)
    elif case is ReductionCase.BOX_PERMUTE:
        out = permute_box(d, idx)
    else:
        out = reduce_botc(d, idx)
    return case, out


def _precheck(d):
    if not is_simplified(d):
        raise ReductionError("derivation is not simplified")
    if trivial_formulas(d):
        raise ReductionError("derivation has trivial formulas")
    if not is_critical(d):
        raise ReductionError("derivation is not critical")


def critical_reduce(d, max_steps: Optional[int] = None, log: Optional[list] = None):
    """Turn a critical simplified derivation into one of strictly lower degree.

    After the case rewrite at the root, the maximal formulas of the old top
    degree it exposes (the introduced conclusions grafted onto eliminations,
    or relocated box introductions) sit in strictly smaller critical
    subderivations, which are reduced in turn, innermost first.

    Each individual rewrite is appended to ``log`` as a :class:`TraceStep`
    (measures of the whole intermediate derivation), so the raw per-rewrite
    changes stay visible even though only the final degree drop is promised.
    """
    _precheck(d)
    g = subtree_degrees(d)[()]
    if max_steps is None:
        max_steps = 10 * size(d) ** 2
    case, res = reduce_step(d)
    res = simplify(relabel_canonical(res))
    if log is not None:
        log.append(TraceStep(case, measures(d), measures(res), (), 0))
    for _ in range(max_steps):
        if subtree_degrees(res)[()] < g:
            return res
        path = critical_paths(res)[0]
        case, sub = reduce_step(get_at(res, path))
        nxt = simplify(relabel_canonical(replace_at(res, path, sub)))
        if log is not None:
            log.append(TraceStep(case, measures(res), measures(nxt), path, 0))
        res = nxt
    raise ReductionError(f"critical reduction did not lower the degree within {max_steps} steps")


# -- driver ---------------------------------------------------------------------


@dataclass
class TraceStep:
    case: ReductionCase
    before: Measures
    after: Measures
    path: Path
    outer: int

    def line(self) -> str:
        b, a = self.before, self.after
        return (
            f"case={self.case} G:{b.G}->{a.G} I:{b.I}->{a.I} "
            f"#G:{b.top_count}->{a.top_count} len:{b.length}->{a.length}"
        )

    @property
    def transient(self) -> bool:
        """The whole derivation's index did not drop at this step."""
        return not self.after.I < self.before.I


@dataclass
class MeasureTrace:
    steps: List[TraceStep] = field(default_factory=list)
    outer: List[Measures] = field(default_factory=list)

    def lines(self) -> List[str]:
        return [s.line() for s in self.steps]

    def dump(self) -> str:
        return "".join(line + "\n" for line in self.lines())

    def outer_strictly_decreasing(self) -> bool:
        idx = [m.I for m in self.outer]
        return all(b < a for a, b in zip(idx, idx[1:]))

    def transient_steps(self) -> List[TraceStep]:
        return [s for s in self.steps if s.transient]

    def __len__(self) -> int:
        return len(self.steps)


def _tidy(d):
    return simplify(relabel_canonical(d))


def normalize(
    d,
    budget: Optional[int] = None,
    on_step: Optional[Callable[[object], None]] = None,
):
    """Normalize an NS4-valid derivation; returns ``(normal_form, trace)``.

    ``budget`` bounds the number of critical reductions (default
    ``10 * len(d)**2``).  Each step rewrites one critical subderivation of
    top degree, preferring the deepest-leftmost one whose rewrite lowers the
    index of the whole derivation.  ``trace.outer`` holds the measures at the
    points where the index fell below its value at the previous such point.
    """
    rep = check_ns4(d)
    if not rep.valid:
        raise InvalidDerivation(rep)
    if budget is None:
        budget = 10 * size(d) ** 2
    trace = MeasureTrace()
    if not measures(d).G:
        return d, trace

    cur = _tidy(d)
    if on_step is not None and cur is not d:
        on_step(cur)
    m = measures(cur)
    trace.outer.append(m)
    while m.G:
        if len(trace.steps) >= budget:
            raise BudgetExhausted(trace, cur)
        chosen = None
        for path in critical_paths(cur):
            sub = get_at(cur, path)
            case, _ = classify_critical(sub)
            cand = _tidy(replace_at(cur, path, critical_reduce(sub)))
            cm = measures(cand)
            if chosen is None:
                chosen = (path, case, cand, cm)
            if cm.I < m.I:
                chosen = (path, case, cand, cm)
                break
        path, case, cand, cm = chosen
        trace.steps.append(TraceStep(case, m, cm, path, len(trace.outer)))
        cur, m = cand, cm
        if on_step is not None:
            on_step(cur)
        if m.I < trace.outer[-1].I:
            trace.outer.append(m)
    return cur, trace
