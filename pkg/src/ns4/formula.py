"""Propositional modal formulas over &, |, ->, bot and [] (necessity)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union


@dataclass(frozen=True)
class Atom:
    name: str

    def __str__(self) -> str:
        return show(self)


@dataclass(frozen=True)
class Bottom:
    def __str__(self) -> str:
        return show(self)


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return show(self)


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return show(self)


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return show(self)


@dataclass(frozen=True)
class Box:
    inner: "Formula"

    def __str__(self) -> str:
        return show(self)


Formula = Union[Atom, Bottom, And, Or, Imp, Box]

BOT = Bottom()


def neg(f: Formula) -> Imp:
    return Imp(f, BOT)


def is_neg(f: Formula) -> bool:
    return isinstance(f, Imp) and isinstance(f.right, Bottom)


def subformulas(f: Formula) -> Iterator[Formula]:
    """Yield every subformula occurrence of ``f``, root first."""
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        if isinstance(g, (And, Or, Imp)):
            stack.append(g.right)
            stack.append(g.left)
        elif isinstance(g, Box):
            stack.append(g.inner)


def degree(f: Formula) -> int:
    """Number of logical symbols other than bot occurring in ``f``."""
    return sum(1 for g in subformulas(f) if isinstance(g, (And, Or, Imp, Box)))


def is_essentially_modal(f: Formula) -> bool:
    """True iff every atom occurrence in ``f`` lies in the scope of some box.

    ``bot`` is a logical constant and imposes no constraint, so ``~bot`` is
    vacuously essentially modal.
    """
    if isinstance(f, Atom):
        return False
    if isinstance(f, (Bottom, Box)):
        return True
    return is_essentially_modal(f.left) and is_essentially_modal(f.right)


# -- printing ---------------------------------------------------------------

def _prec(f: Formula) -> int:
    if isinstance(f, Imp) and not is_neg(f):
        return 1
    if isinstance(f, Or):
        return 2
    if isinstance(f, And):
        return 3
    return 4


def show(f: Formula) -> str:
    """ASCII rendering, the inverse of :func:`ns4.syntax.parse_formula`."""
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Bottom):
        return "bot"
    if isinstance(f, Box):
        return "[]" + _wrap(f.inner, 4)
    if is_neg(f):
        return "~" + _wrap(f.left, 4)
    if isinstance(f, Imp):
        # right-associative
        return f"{_wrap(f.left, 2)} -> {_wrap(f.right, 1)}"
    op = " | " if isinstance(f, Or) else " & "
    p = _prec(f)
    # left-associative
    return _wrap(f.left, p) + op + _wrap(f.right, p + 1)


def _wrap(f: Formula, min_prec: int) -> str:
    s = show(f)
    return s if _prec(f) >= min_prec else f"({s})"


def latex(f: Formula) -> str:
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Bottom):
        return r"\bot"
    if isinstance(f, Box):
        return r"\Box " + _lwrap(f.inner, 4)
    if is_neg(f):
        return r"\neg " + _lwrap(f.left, 4)
    if isinstance(f, Imp):
        return f"{_lwrap(f.left, 2)} \\to {_lwrap(f.right, 1)}"
    op = r" \vee " if isinstance(f, Or) else r" \wedge "
    p = _prec(f)
    return _lwrap(f.left, p) + op + _lwrap(f.right, p + 1)


def _lwrap(f: Formula, min_prec: int) -> str:
    s = latex(f)
    return s if _prec(f) >= min_prec else f"({s})"
