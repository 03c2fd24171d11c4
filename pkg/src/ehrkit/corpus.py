"""Bundled corpus of integral polytopes used as regression fixtures.

The corpus ships six families of mutually Ehrhart-equivalent 4-polytopes
(``example1`` .. ``example6``), the 2-simplex pair ``s21``/``s22`` of equal
Ehrhart polynomial but distinct unimodular class, and their 4-dimensional
pyramid lifts ``r1``/``r2``.
"""

from __future__ import annotations

import re
from functools import lru_cache
from importlib import resources

from .documents import PolytopeDocument, parse_document, to_polytope
from .polytope import LatticePolytope

_SUFFIX = ".poly"


def _data_root():
    return resources.files(__package__) / "data"


@lru_cache(maxsize=1)
def names() -> tuple[str, ...]:
    """All corpus entry names, sorted with numeric suffixes in order."""

    def sort_key(name: str):
        return [
            int(part) if part.isdigit() else part
            for part in re.split(r"(\d+)", name)
        ]

    found = [
        entry.name[: -len(_SUFFIX)]
        for entry in _data_root().iterdir()
        if entry.name.endswith(_SUFFIX)
    ]
    return tuple(sorted(found, key=sort_key))


def families() -> dict[str, tuple[str, ...]]:
    """Corpus names grouped by family prefix (the part before ``_``)."""
    grouped: dict[str, list[str]] = {}
    for name in names():
        family = name.split("_", 1)[0]
        grouped.setdefault(family, []).append(name)
    return {family: tuple(members) for family, members in grouped.items()}


def document(name: str) -> PolytopeDocument:
    entry = _data_root() / f"{name}{_SUFFIX}"
    if not entry.is_file():
        raise KeyError(f"no corpus entry named {name!r}")
    return parse_document(entry.read_text(), source=f"corpus:{name}")


@lru_cache(maxsize=None)
def load(name: str) -> LatticePolytope:
    return to_polytope(document(name))


def path(name: str) -> str:
    """Filesystem path of a corpus entry (for handing to the CLI)."""
    entry = _data_root() / f"{name}{_SUFFIX}"
    if not entry.is_file():
        raise KeyError(f"no corpus entry named {name!r}")
    return str(entry)
