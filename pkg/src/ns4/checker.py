"""Rule-system checkers: NS4 and Prawitz's three box-introduction variants."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List

from .derivation import (
    Assume,
    BotC,
    BoxI,
    ImpI,
    OrE,
    Path,
    binder_labels,
    bindings,
    iter_nodes,
)
from .formula import Box, Formula, Or, is_essentially_modal, neg

SYSTEMS = ("ns4", "prawitz-v1", "prawitz-v2", "prawitz-v3")


@dataclass(frozen=True)
class Violation:
    path: Path
    rule: str
    reason: str

    def __str__(self) -> str:
        where = "/" + "/".join(map(str, self.path))
        return f"{where}: {self.rule}: {self.reason}"


@dataclass
class CheckReport:
    system: str
    violations: List[Violation] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.valid


def check_ns4(d) -> CheckReport:
    return check(d, "ns4")


def check_prawitz(d, version: str, allow_closed: bool = True) -> CheckReport:
    """``version`` is one of ``v1``, ``v2``, ``v3``.

    ``allow_closed`` accepts a box introduction whose premiss depends on no
    assumption at all; with ``False`` such applications are reported.
    """
    if version not in ("v1", "v2", "v3"):
        raise ValueError(f"unknown Prawitz version {version!r}")
    return check(d, "prawitz-" + version, allow_closed)


def check(d, system: str = "ns4", allow_closed: bool = True) -> CheckReport:
    if system not in SYSTEMS:
        raise ValueError(f"unknown system {system!r}")
    report = CheckReport(system)
    nodes: Dict[Path, object] = dict(iter_nodes(d))
    bound = bindings(d)
    add = report.violations.append

    by_binder: Dict[Path, List[Path]] = {}
    for leaf, binder in bound.items():
        by_binder.setdefault(binder, []).append(leaf)

    seen: Dict[int, Path] = {}
    for path, node in nodes.items():
        if isinstance(node, Assume):
            if node.label is not None and path not in bound:
                add(Violation(path, "assume", f"label {node.label} is not discharged by any enclosing rule"))
            continue
        for lab, _ in binder_labels(node):
            if lab in seen:
                add(Violation(path, node.rule, f"label {lab} already used by the rule at /{'/'.join(map(str, seen[lab]))}"))
            else:
                seen[lab] = path

    for path, node in nodes.items():
        leaves = sorted(by_binder.get(path, ()))
        if isinstance(node, ImpI):
            _same_formula(add, path, node, nodes, leaves, node.antecedent)
        elif isinstance(node, BotC):
            _same_formula(add, path, node, nodes, leaves, neg(node.target))
        elif isinstance(node, OrE):
            disj = node.major.conclusion
            assert isinstance(disj, Or)
            n = len(path)
            for leaf in leaves:
                side = leaf[n]
                want = disj.left if side == 1 else disj.right
                got = nodes[leaf].formula
                if got != want:
                    add(Violation(path, node.rule, f"case assumption [{got}] should be [{want}]"))
        elif isinstance(node, BoxI):
            if system == "ns4":
                _box_ns4(add, path, node, nodes, bound, leaves)
            else:
                _box_prawitz(add, path, node, nodes, bound, leaves, system[-2:], allow_closed)
    report.violations.sort(key=lambda v: (v.path, v.rule, v.reason))
    return report


def _same_formula(add, path, node, nodes, leaves, want: Formula):
    for leaf in leaves:
        got = nodes[leaf].formula
        if got != want:
            add(Violation(path, node.rule, f"discharged assumption [{got}] should be [{want}]"))


def _minor_open(path: Path, node: BoxI, nodes, bound) -> List[Path]:
    """Leaves in the minor premiss not discharged inside the minor."""
    mp = path + (len(node.majors),)
    n = len(mp)
    out = []
    for p, leaf in nodes.items():
        if not isinstance(leaf, Assume) or p[:n] != mp:
            continue
        b = bound.get(p)
        if b is None or b[:n] != mp:
            out.append(p)
    return out


def _box_ns4(add, path, node: BoxI, nodes, bound, leaves):
    concls = [m.conclusion for m in node.majors]
    for i, c in enumerate(concls):
        if not isinstance(c, Box):
            add(Violation(path + (i,), node.rule, f"major premiss {c} is not a Box formula"))
    if len(set(concls)) != len(concls):
        dup = sorted({str(c) for c in concls if concls.count(c) > 1})
        add(Violation(path, node.rule, "majors are not pairwise distinct: " + ", ".join(dup)))
    allowed = set(concls)
    for leaf in leaves:
        f = nodes[leaf].formula
        if f not in allowed:
            add(Violation(path, node.rule, f"discharged assumption [{f}] is not among the majors"))
    own = set(leaves)
    for leaf in _minor_open(path, node, nodes, bound):
        if leaf not in own:
            f = nodes[leaf].formula
            add(Violation(path, node.rule, f"minor premiss depends on undischarged assumption {f}"))


def _box_prawitz(add, path, node: BoxI, nodes, bound, leaves, version: str, allow_closed: bool):
    if node.majors:
        add(Violation(path, node.rule, "Prawitz box introduction takes a single premiss"))
    for leaf in leaves:
        add(Violation(path, node.rule, f"assumption [{nodes[leaf].formula}] discharged by a unary box introduction"))
    deps = _minor_open(path, node, nodes, bound)
    if not deps and not allow_closed:
        add(Violation(path, node.rule, "premiss depends on no assumption"))
    if version == "v1":
        for leaf in deps:
            f = nodes[leaf].formula
            if not isinstance(f, Box):
                add(Violation(path, node.rule, f"premiss depends on non-modal formula {f}"))
    elif version == "v2":
        for leaf in deps:
            f = nodes[leaf].formula
            if not is_essentially_modal(f):
                add(Violation(path, node.rule, f"premiss depends on {f}, which is not essentially modal"))
    else:
        mp = path + (len(node.majors),)
        dep_set = set(deps)
        for leaf in deps:
            if not _thread_ok(leaf, mp, nodes, bound, dep_set):
                add(Violation(
                    path, node.rule,
                    f"no essentially modal formula on the thread from {nodes[leaf].formula} "
                    "carries a subset of the premiss's dependencies",
                ))


def _thread_ok(leaf: Path, top: Path, nodes, bound, deps_top) -> bool:
    # walk from the assumption down to the premiss occurrence
    for k in range(len(leaf), len(top) - 1, -1):
        occ = leaf[:k]
        if not is_essentially_modal(nodes[occ].conclusion):
            continue
        if _deps_at(occ, nodes, bound) <= deps_top:
            return True
    return False


def _deps_at(occ: Path, nodes, bound) -> set:
    n = len(occ)
    out = set()
    for p, leaf in nodes.items():
        if isinstance(leaf, Assume) and p[:n] == occ:
            b = bound.get(p)
            if b is None or b[:n] != occ:
                out.add(p)
    return out
