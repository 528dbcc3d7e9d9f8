"""Textual syntax for formulas and derivations (``.nd`` files).

Formulas (ASCII)::

    impl  := or ('->' impl)?
    or    := and ('|' and)*
    and   := unary ('&' unary)*
    unary := '~' unary | '[]' unary | atom
    atom  := IDENT | 'bot' | '(' impl ')'

Derivations are s-expressions, one constructor per rule::

    (assume F k?)  (andI d d)  (andEl d)  (andEr d)  (orIl F d)  (orIr F d)
    (orE d k d k d)  (impI F k d)  (impE d d)  (botC F k d)  (boxE d)
    (boxI (d ...) k d)

``#`` starts a comment that runs to the end of the line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, List, NamedTuple, Tuple

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
    Path,
    StructuralError,
)
from .formula import BOT, And, Atom, Box, Formula, Imp, Or, show


class SourceSpan(NamedTuple):
    start: int
    end: int

    def __str__(self) -> str:
        return f"{self.start}-{self.end}"


class ParseError(ValueError):
    def __init__(self, message: str, span: SourceSpan):
        super().__init__(f"{span}: {message}")
        self.message = message
        self.span = span


@dataclass(frozen=True)
class Token:
    kind: str  # one of ( ) [] ~ & | -> ident int
    text: str
    span: SourceSpan


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<arrow>->)
  | (?P<box>\[\])
  | (?P<punct>[()~&|])
  | (?P<int>[0-9]+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
    """,
    re.VERBOSE,
)


def tokenize(text: str) -> List[Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", SourceSpan(pos, pos + 1))
        kind = m.lastgroup
        span = SourceSpan(m.start(), m.end())
        if kind == "arrow":
            out.append(Token("->", "->", span))
        elif kind == "box":
            out.append(Token("[]", "[]", span))
        elif kind == "punct":
            out.append(Token(m.group(), m.group(), span))
        elif kind in ("int", "ident"):
            out.append(Token(kind, m.group(), span))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.spans: Dict[Path, SourceSpan] = {}

    # -- helpers
    def peek(self, k: int = 0):
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else None

    def eof_span(self) -> SourceSpan:
        n = len(self.text)
        return SourceSpan(n, n)

    def next(self, what: str) -> Token:
        t = self.peek()
        if t is None:
            raise ParseError(f"unexpected end of input, expected {what}", self.eof_span())
        self.i += 1
        return t

    def expect(self, kind: str) -> Token:
        t = self.next(repr(kind))
        if t.kind != kind:
            raise ParseError(f"expected {kind!r}, got {t.text!r}", t.span)
        return t

    def at(self, kind: str) -> bool:
        t = self.peek()
        return t is not None and t.kind == kind

    # -- formulas
    def formula(self) -> Formula:
        left = self.disj()
        if self.at("->"):
            self.i += 1
            return Imp(left, self.formula())
        return left

    def disj(self) -> Formula:
        f = self.conj()
        while self.at("|"):
            self.i += 1
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.at("&"):
            self.i += 1
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        t = self.next("a formula")
        if t.kind == "~":
            return Imp(self.unary(), BOT)
        if t.kind == "[]":
            return Box(self.unary())
        if t.kind == "ident":
            return BOT if t.text == "bot" else Atom(t.text)
        if t.kind == "(":
            f = self.formula()
            self.expect(")")
            return f
        raise ParseError(f"expected a formula, got {t.text!r}", t.span)

    def label(self) -> int:
        t = self.next("a label")
        if t.kind != "int":
            raise ParseError(f"expected a label, got {t.text!r}", t.span)
        if int(t.text) < 1:
            raise ParseError("labels must be positive integers", t.span)
        return int(t.text)

    # -- derivations
    def derivation(self, path: Path = ()):
        open_tok = self.expect("(")
        head = self.next("a rule name")
        if head.kind != "ident":
            raise ParseError(f"expected a rule name, got {head.text!r}", head.span)
        rule = head.text
        try:
            node = self._rule(rule, head, path)
        except StructuralError as e:
            last = self.peek() if self.at(")") else self.toks[self.i - 1]
            span = SourceSpan(open_tok.span.start, last.span.end)
            raise ParseError(f"{e.rule}: {e.reason}", span) from None
        close = self.expect(")")
        self.spans[path] = SourceSpan(open_tok.span.start, close.span.end)
        return node

    def _rule(self, rule: str, head: Token, path: Path):
        sub = self.derivation
        if rule == "assume":
            f = self.formula()
            lab = self.label() if self.at("int") else None
            return Assume(f, lab)
        if rule == "andI":
            return AndI(sub(path + (0,)), sub(path + (1,)))
        if rule == "andEl":
            return AndEL(sub(path + (0,)))
        if rule == "andEr":
            return AndER(sub(path + (0,)))
        if rule == "orIl":
            f = self.formula()
            return OrIL(sub(path + (0,)), f)
        if rule == "orIr":
            f = self.formula()
            return OrIR(sub(path + (0,)), f)
        if rule == "orE":
            m = sub(path + (0,))
            k1 = self.label()
            left = sub(path + (1,))
            k2 = self.label()
            right = sub(path + (2,))
            return OrE(m, left, k1, right, k2)
        if rule == "impI":
            f = self.formula()
            k = self.label()
            return ImpI(sub(path + (0,)), k, f)
        if rule == "impE":
            return ImpE(sub(path + (0,)), sub(path + (1,)))
        if rule == "botC":
            f = self.formula()
            k = self.label()
            return BotC(sub(path + (0,)), k, f)
        if rule == "boxE":
            return BoxE(sub(path + (0,)))
        if rule == "boxI":
            self.expect("(")
            majors = []
            while not self.at(")"):
                if self.peek() is None:
                    raise ParseError("unterminated list of majors", self.eof_span())
                majors.append(sub(path + (len(majors),)))
            self.expect(")")
            k = self.label()
            minor = sub(path + (len(majors),))
            return BoxI(tuple(majors), k, minor)
        raise ParseError(f"unknown rule {rule!r}", head.span)

    def finish(self):
        t = self.peek()
        if t is not None:
            raise ParseError(f"trailing input {t.text!r}", t.span)


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    if p.peek() is None:
        raise ParseError("empty input", p.eof_span())
    f = p.formula()
    p.finish()
    return f


def parse_derivation_with_spans(text: str) -> Tuple[object, Dict[Path, SourceSpan]]:
    p = _Parser(text)
    if p.peek() is None:
        raise ParseError("empty input", p.eof_span())
    d = p.derivation()
    p.finish()
    return d, p.spans


def parse_derivation(text: str):
    return parse_derivation_with_spans(text)[0]


# -- canonical s-expressions ------------------------------------------------


def to_sexpr(d) -> str:
    """Canonical one-line rendering; ``parse_derivation`` inverts it."""
    parts: List[str] = []
    _emit(d, parts)
    return "".join(parts)


def _emit(d, out: List[str]):
    if isinstance(d, Assume):
        out.append(f"(assume {show(d.formula)}" + ("" if d.label is None else f" {d.label}") + ")")
        return
    if isinstance(d, AndI):
        head = "(andI "
    elif isinstance(d, AndEL):
        head = "(andEl "
    elif isinstance(d, AndER):
        head = "(andEr "
    elif isinstance(d, OrIL):
        head = f"(orIl {show(d.other)} "
    elif isinstance(d, OrIR):
        head = f"(orIr {show(d.other)} "
    elif isinstance(d, ImpI):
        head = f"(impI {show(d.antecedent)} {d.label} "
    elif isinstance(d, ImpE):
        head = "(impE "
    elif isinstance(d, BotC):
        head = f"(botC {show(d.target)} {d.label} "
    elif isinstance(d, BoxE):
        head = "(boxE "
    elif isinstance(d, OrE):
        out.append("(orE ")
        _emit(d.major, out)
        out.append(f" {d.left_label} ")
        _emit(d.left_case, out)
        out.append(f" {d.right_label} ")
        _emit(d.right_case, out)
        out.append(")")
        return
    elif isinstance(d, BoxI):
        out.append("(boxI (")
        for i, m in enumerate(d.majors):
            if i:
                out.append(" ")
            _emit(m, out)
        out.append(f") {d.label} ")
        _emit(d.minor, out)
        out.append(")")
        return
    else:
        raise TypeError(f"not a derivation: {d!r}")
    out.append(head)
    for i, c in enumerate(d.children):
        if i:
            out.append(" ")
        _emit(c, out)
    out.append(")")


def _items(d):
    """Head text and the remaining items (label strings or subderivations)."""
    if isinstance(d, AndI):
        return "andI", [d.left, d.right]
    if isinstance(d, AndEL):
        return "andEl", [d.premiss]
    if isinstance(d, AndER):
        return "andEr", [d.premiss]
    if isinstance(d, OrIL):
        return f"orIl {show(d.other)}", [d.premiss]
    if isinstance(d, OrIR):
        return f"orIr {show(d.other)}", [d.premiss]
    if isinstance(d, OrE):
        return "orE", [d.major, str(d.left_label), d.left_case, str(d.right_label), d.right_case]
    if isinstance(d, ImpI):
        return f"impI {show(d.antecedent)} {d.label}", [d.body]
    if isinstance(d, ImpE):
        return "impE", [d.major, d.minor]
    if isinstance(d, BotC):
        return f"botC {show(d.target)} {d.label}", [d.body]
    if isinstance(d, BoxE):
        return "boxE", [d.major]
    raise TypeError(f"not a compound derivation: {d!r}")


def pretty_sexpr(d, width: int = 78, indent: int = 0) -> str:
    """Indented rendering that keeps subterms on one line when they fit.

    Parses to the same derivation as :func:`to_sexpr`.
    """
    flat = to_sexpr(d)
    if isinstance(d, Assume) or indent + len(flat) <= width:
        return " " * indent + flat
    pad = " " * (indent + 2)
    if isinstance(d, BoxI):
        lines = [" " * indent + "(boxI ("]
        lines += [pretty_sexpr(m, width, indent + 4) for m in d.majors]
        lines.append(f"{pad}) {d.label}")
        lines.append(pretty_sexpr(d.minor, width, indent + 2) + ")")
        return "\n".join(lines)
    head, items = _items(d)
    lines = [" " * indent + "(" + head]
    pending = ""
    for it in items:
        if isinstance(it, str):
            pending = it + " "
            continue
        sub = pretty_sexpr(it, width, indent + 2 + len(pending))
        lines.append(pad + pending + sub.lstrip() if pending else sub)
        pending = ""
    lines[-1] += ")"
    return "\n".join(lines)
