"""ASCII and JSON polyomino formats.

ASCII: one line per row, top row first, ``#`` for a cell and ``.`` for a gap.
Lines starting with ``%`` before the body are header comments; a header line
of the form ``% name: <label>`` sets the polyomino name.

JSON: ``{"name": str (optional), "cells": [[x, y], ...]}``.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Iterable, List, Optional

from .errors import ParseError
from .geometry import Polyomino, validate


def parse_ascii(text: str, name: Optional[str] = None) -> Polyomino:
    lines = text.splitlines()
    body: List[str] = []
    i = 0
    while i < len(lines) and (lines[i].startswith("%") or not lines[i].strip()):
        line = lines[i]
        if line.startswith("%") and ":" in line:
            key, _, value = line[1:].partition(":")
            if key.strip() == "name" and name is None:
                name = value.strip() or None
        i += 1
    body = [ln.rstrip() for ln in lines[i:]]
    while body and not body[-1]:
        body.pop()
    if not body:
        raise ParseError("no rows")
    cells = []
    height = len(body)
    for r, row in enumerate(body):
        if not row:
            raise ParseError(f"blank line inside the body (row {r + 1})")
        for x, ch in enumerate(row):
            if ch == "#":
                cells.append((x, height - 1 - r))
            elif ch != ".":
                raise ParseError(f"unexpected character {ch!r} in row {r + 1}")
    if not cells:
        raise ParseError("no cells")
    return validate(cells, name)


def format_ascii(P: Polyomino, header: Iterable[str] = ()) -> str:
    rows = []
    for h in header:
        rows.append(f"% {h}")
    for y in range(P.height - 1, -1, -1):
        rows.append("".join("#" if (x, y) in P.cells else "." for x in range(P.width)).rstrip("."))
    return "\n".join(rows) + "\n"


def parse_json(text: str) -> Polyomino:
    try:
        data = json.loads(text)
        cells = [(int(x), int(y)) for x, y in data["cells"]]
    except (ValueError, KeyError, TypeError) as exc:
        raise ParseError(f"bad polyomino JSON: {exc}") from exc
    return validate(cells, data.get("name"))


def to_json(P: Polyomino) -> str:
    data = {}
    if P.name:
        data["name"] = P.name
    data["cells"] = [[c.x, c.y] for c in sorted(P.cells)]
    return json.dumps(data, sort_keys=True)


def fixture_names() -> List[str]:
    root = resources.files("polygb") / "fixtures" / "paper"
    return sorted(p.name for p in root.iterdir() if not p.name.startswith(("_", ".")))


def load_fixture(name: str) -> Polyomino:
    path = resources.files("polygb") / "fixtures" / "paper" / name
    if not path.is_file():
        raise ParseError(f"no fixture named {name!r}")
    return parse_ascii(path.read_text(), name=name)


def load(path) -> Polyomino:
    """Read a polyomino file; unknown paths ending in a fixture name load the bundled fixture."""
    p = Path(path)
    if not p.exists():
        if p.name in fixture_names():
            return load_fixture(p.name)
        raise ParseError(f"no such file: {path}")
    text = p.read_text()
    if text.lstrip().startswith("{"):
        P = parse_json(text)
    else:
        P = parse_ascii(text)
    if P.name is None:
        P = Polyomino(P.cells, p.stem)
    return P
