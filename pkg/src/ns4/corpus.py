"""Bundled example derivations (the ``corpus`` data directory)."""

from __future__ import annotations

from importlib import resources
from pathlib import Path
from typing import Dict, List

from .syntax import parse_derivation


def directory() -> Path:
    return Path(str(resources.files("ns4") / "corpus"))


def names() -> List[str]:
    return sorted(p.stem for p in directory().glob("*.nd"))


def path(name: str) -> Path:
    p = directory() / (name if name.endswith(".nd") else name + ".nd")
    if not p.exists():
        raise KeyError(name)
    return p


def text(name: str) -> str:
    return path(name).read_text(encoding="utf-8")


def load(name: str):
    return parse_derivation(text(name))


def load_all() -> Dict[str, object]:
    return {n: load(n) for n in names()}
