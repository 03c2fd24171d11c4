"""Polytope file formats: line-oriented text and an equivalent JSON object.

Text format, hand-editable::

    # name: r1
    dim 4
    0 0 0 0
    9 0 0 0
    ...

"#" starts a comment.  The JSON alternative is an object with fields
``dim``, ``vertices``, and optional ``name``; the two parse interchangeably.
Emitted documents list their vertices sorted, so emit-then-parse is the
identity on (dim, vertex set).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import DocumentParseError
from .polytope import LatticePolytope, make_polytope


@dataclass(frozen=True)
class PolytopeDocument:
    dim: int
    vertices: tuple[tuple[int, ...], ...]
    name: str | None = None


def parse_document(text: str, source: str = "<string>") -> PolytopeDocument:
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return _parse_json(text, source)
    return _parse_text(text, source)


def _parse_text(text: str, source: str) -> PolytopeDocument:
    dim: int | None = None
    name: str | None = None
    vertices: list[tuple[int, ...]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        comment_split = raw.split("#", 1)
        line = comment_split[0].strip()
        if len(comment_split) > 1 and name is None:
            comment = comment_split[1].strip()
            if comment.startswith("name:"):
                name = comment[len("name:"):].strip() or None
        if not line:
            continue
        fields = line.split()
        if dim is None:
            if fields[0] != "dim" or len(fields) != 2:
                raise DocumentParseError(
                    source, lineno, f"expected 'dim <n>' header, got {line!r}"
                )
            try:
                dim = int(fields[1])
            except ValueError:
                raise DocumentParseError(
                    source, lineno, f"dimension is not an integer: {fields[1]!r}"
                ) from None
            if dim < 1:
                raise DocumentParseError(source, lineno, f"dimension must be >= 1, got {dim}")
            continue
        try:
            point = tuple(int(f) for f in fields)
        except ValueError:
            raise DocumentParseError(
                source, lineno, f"vertex line has a non-integer field: {line!r}"
            ) from None
        if len(point) != dim:
            raise DocumentParseError(
                source,
                lineno,
                f"vertex has {len(point)} coordinates, expected {dim}",
            )
        vertices.append(point)
    if dim is None:
        raise DocumentParseError(source, None, "missing 'dim <n>' header")
    if not vertices:
        raise DocumentParseError(source, None, "no vertices")
    return PolytopeDocument(dim, tuple(vertices), name)


def _parse_json(text: str, source: str) -> PolytopeDocument:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentParseError(source, exc.lineno, f"invalid JSON: {exc.msg}") from None
    if not isinstance(payload, dict):
        raise DocumentParseError(source, None, "JSON document must be an object")
    try:
        dim = payload["dim"]
        raw_vertices = payload["vertices"]
    except KeyError as exc:
        raise DocumentParseError(source, None, f"missing field {exc.args[0]!r}") from None
    if not isinstance(dim, int) or dim < 1:
        raise DocumentParseError(source, None, f"'dim' must be a positive integer, got {dim!r}")
    vertices = []
    for i, row in enumerate(raw_vertices):
        if not isinstance(row, list) or len(row) != dim or not all(
            isinstance(x, int) and not isinstance(x, bool) for x in row
        ):
            raise DocumentParseError(
                source, None, f"vertex {i} must be a list of {dim} integers, got {row!r}"
            )
        vertices.append(tuple(row))
    if not vertices:
        raise DocumentParseError(source, None, "no vertices")
    name = payload.get("name")
    if name is not None and not isinstance(name, str):
        raise DocumentParseError(source, None, f"'name' must be a string, got {name!r}")
    return PolytopeDocument(dim, tuple(vertices), name)


def load_document(path) -> PolytopeDocument:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise DocumentParseError(str(path), None, f"cannot read file: {exc}") from None
    return parse_document(text, source=str(path))


def document_from_polytope(polytope: LatticePolytope, name: str | None = None) -> PolytopeDocument:
    return PolytopeDocument(polytope.dim, tuple(sorted(polytope.vertices)), name)


def to_polytope(document: PolytopeDocument) -> LatticePolytope:
    return make_polytope(document.dim, document.vertices)


def emit_text(document: PolytopeDocument) -> str:
    lines = []
    if document.name:
        lines.append(f"# name: {document.name}")
    lines.append(f"dim {document.dim}")
    lines.extend(" ".join(str(x) for x in v) for v in sorted(document.vertices))
    return "\n".join(lines) + "\n"


def emit_json(document: PolytopeDocument) -> str:
    payload = {
        "dim": document.dim,
        "vertices": [list(v) for v in sorted(document.vertices)],
    }
    if document.name:
        payload["name"] = document.name
    return json.dumps(payload, indent=2) + "\n"
