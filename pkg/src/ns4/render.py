"""Proof-tree renderers: canonical s-expression, ASCII tree and bussproofs."""

from __future__ import annotations

from typing import List, Tuple

from .derivation import Assume, BoxI, binder_labels
from .formula import latex, show
from .syntax import to_sexpr

FORMATS = ("canonical-sexpr", "ascii-tree", "latex-tree")


def render(d, format: str = "ascii-tree") -> str:
    if format == "canonical-sexpr":
        return to_sexpr(d)
    if format == "ascii-tree":
        return ascii_tree(d)
    if format == "latex-tree":
        return latex_tree(d)
    raise ValueError(f"unknown format {format!r}; expected one of {', '.join(FORMATS)}")


def _leaf_text(d: Assume) -> str:
    f = show(d.formula)
    return f"[{f}]^{d.label}" if d.label is not None else f


def _tag(d) -> str:
    labs = [str(lab) for lab, _ in binder_labels(d)]
    return " ".join([d.rule] + labs)


# block: (lines, concl_left, concl_right)
Block = Tuple[List[str], int, int]


def _block(d) -> Block:
    if isinstance(d, Assume):
        t = _leaf_text(d)
        return [t], 0, len(t)
    kids = [_block(c) for c in d.children]
    height = max(len(k[0]) for k in kids)
    gap = 3
    lines = [""] * height
    offsets = []
    x = 0
    for klines, _, _ in kids:
        w = max(len(s) for s in klines)
        pad = height - len(klines)
        offsets.append(x)
        for i in range(height):
            row = klines[i - pad] if i >= pad else ""
            lines[i] = lines[i].ljust(x) + row
        x += w + gap
    pl = offsets[0] + kids[0][1]
    pr = offsets[-1] + kids[-1][2]
    concl = show(d.conclusion)
    bar_len = max(pr - pl, len(concl))
    bar_start = pl - (bar_len - (pr - pl)) // 2
    shift = -bar_start if bar_start < 0 else 0
    if shift:
        lines = [" " * shift + s if s else s for s in lines]
        bar_start = 0
    c_start = bar_start + (bar_len - len(concl)) // 2
    lines.append(" " * bar_start + "-" * bar_len + " " + _tag(d))
    lines.append(" " * c_start + concl)
    return [s.rstrip() for s in lines], c_start, c_start + len(concl)


def ascii_tree(d) -> str:
    return "\n".join(_block(d)[0])


_INF = {1: "UnaryInfC", 2: "BinaryInfC", 3: "TrinaryInfC", 4: "QuaternaryInfC", 5: "QuinaryInfC"}


def _latex(d, out: List[str]):
    if isinstance(d, Assume):
        f = latex(d.formula)
        text = f"[{f}]^{{{d.label}}}" if d.label is not None else f
        out.append(f"\\AxiomC{{${text}$}}")
        return
    kids = list(d.children)
    if isinstance(d, BoxI) and len(kids) > 5:
        # bussproofs stops at five premisses; collapse the surplus majors
        extra = kids[: len(kids) - 4]
        out.append("\\AxiomC{$" + ",\\ ".join(latex(k.conclusion) for k in extra) + "$}")
        kids = kids[len(kids) - 4:]
        for k in kids:
            _latex(k, out)
        n = 5
    else:
        for k in kids:
            _latex(k, out)
        n = len(kids)
    labs = [str(lab) for lab, _ in binder_labels(d)]
    if labs:
        out.append(f"\\RightLabel{{\\scriptsize ${','.join(labs)}$}}")
    out.append(f"\\{_INF[n]}{{${latex(d.conclusion)}$}}")


def latex_tree(d) -> str:
    out = ["\\begin{prooftree}"]
    _latex(d, out)
    out.append("\\end{prooftree}")
    return "\n".join(out)
