"""Matrix serialization.

Four interchangeable formats, each round-tripping exactly:

  dense   one line of '0'/'1' characters per row
  coords  header line "rows cols", then one "row col" line per 1-entry,
          ascending in row-major order (the header is what makes all-zero
          rows and columns recoverable)
  pbm     portable bitmap, text variant P1, '1' = matrix entry 1
  json    array of objects {"m", "n", "a", "b", "seed", "rows"}, rows as
          '0'/'1' strings; a, b and seed may be null

Multi-matrix streams are separated by a blank line in the text formats and
are a single array in json.
"""

from __future__ import annotations

import json
import re

from .core import BinaryMatrix

FORMATS = ("dense", "coords", "pbm", "json")


class ParseError(ValueError):
    """Input does not parse in the declared format."""


def render_many(matrices: list[BinaryMatrix], fmt: str,
                metas: list[dict] | None = None) -> str:
    """Serialize matrices; metas (a/b/seed per matrix) only affect json."""
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}, expected one of {FORMATS}")
    if metas is None:
        metas = [{} for _ in matrices]
    if len(metas) != len(matrices):
        raise ValueError("metas must align with matrices")
    if fmt == "json":
        return json.dumps([_json_obj(m, meta) for m, meta in zip(matrices, metas)],
                          indent=2) + "\n"
    records = [_render_one(m, fmt) for m in matrices]
    return "\n".join(records)


def render(matrix: BinaryMatrix, fmt: str, **meta) -> str:
    return render_many([matrix], fmt, [meta])


def _render_one(matrix: BinaryMatrix, fmt: str) -> str:
    rows = matrix.to_rowstrings()
    if fmt == "dense":
        return "".join(r + "\n" for r in rows)
    if fmt == "coords":
        lines = [f"{matrix.rows_m} {matrix.cols_n}"]
        for i, row in enumerate(rows):
            for j, ch in enumerate(row):
                if ch == "1":
                    lines.append(f"{i} {j}")
        return "".join(line + "\n" for line in lines)
    if fmt == "pbm":
        return f"P1\n{matrix.cols_n} {matrix.rows_m}\n" + "".join(r + "\n" for r in rows)
    raise ValueError(fmt)


def _json_obj(matrix: BinaryMatrix, meta: dict) -> dict:
    return {
        "m": matrix.rows_m,
        "n": matrix.cols_n,
        "a": meta.get("a"),
        "b": meta.get("b"),
        "seed": meta.get("seed"),
        "rows": matrix.to_rowstrings(),
    }


def parse_many(text: str, fmt: str) -> list[BinaryMatrix]:
    """Parse a (possibly multi-record) stream; raises ParseError on bad input."""
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}, expected one of {FORMATS}")
    parser = {"dense": _parse_dense, "coords": _parse_coords,
              "pbm": _parse_pbm, "json": _parse_json}[fmt]
    matrices = parser(text)
    if not matrices:
        raise ParseError("no matrix records found in input")
    return matrices


def _blocks(text: str) -> list[list[str]]:
    blocks: list[list[str]] = []
    current: list[str] = []
    for raw in text.splitlines():
        line = raw.strip()
        if line:
            current.append(line)
        elif current:
            blocks.append(current)
            current = []
    if current:
        blocks.append(current)
    return blocks


def _rows_to_matrix(rows: list[str]) -> BinaryMatrix:
    try:
        return BinaryMatrix.from_rowstrings(rows)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def _parse_dense(text: str) -> list[BinaryMatrix]:
    return [_rows_to_matrix(block) for block in _blocks(text)]


def _parse_coords(text: str) -> list[BinaryMatrix]:
    out = []
    for block in _blocks(text):
        header = block[0].split()
        if len(header) != 2:
            raise ParseError(f"coords header must be 'rows cols', got {block[0]!r}")
        try:
            m, n = int(header[0]), int(header[1])
        except ValueError:
            raise ParseError(f"coords header must be 'rows cols', got {block[0]!r}") from None
        if m < 1 or n < 1:
            raise ParseError(f"coords dimensions must be positive, got {m}x{n}")
        grid = [[0] * n for _ in range(m)]
        for line in block[1:]:
            parts = line.split()
            if len(parts) != 2:
                raise ParseError(f"coords entry must be 'row col', got {line!r}")
            try:
                i, j = int(parts[0]), int(parts[1])
            except ValueError:
                raise ParseError(f"coords entry must be 'row col', got {line!r}") from None
            if not (0 <= i < m and 0 <= j < n):
                raise ParseError(f"coordinate ({i}, {j}) outside {m}x{n}")
            if grid[i][j]:
                raise ParseError(f"duplicate coordinate ({i}, {j})")
            grid[i][j] = 1
        out.append(_rows_to_matrix(["".join(map(str, row)) for row in grid]))
    return out


def _parse_pbm(text: str) -> list[BinaryMatrix]:
    body = re.sub(r"#[^\n]*", "", text)
    pos = 0
    end = len(body)

    def skip_ws():
        nonlocal pos
        while pos < end and body[pos].isspace():
            pos += 1

    def token() -> str:
        nonlocal pos
        skip_ws()
        start = pos
        while pos < end and not body[pos].isspace():
            pos += 1
        return body[start:pos]

    out = []
    while True:
        skip_ws()
        if pos >= end:
            break
        magic = token()
        if magic != "P1":
            raise ParseError(f"expected P1 magic, got {magic!r}")
        try:
            w = int(token())
            h = int(token())
        except ValueError:
            raise ParseError("P1 header must carry integer width and height") from None
        if w < 1 or h < 1:
            raise ParseError(f"P1 dimensions must be positive, got {w}x{h}")
        digits = []
        while len(digits) < w * h:
            skip_ws()
            if pos >= end:
                raise ParseError(f"P1 raster truncated: expected {w * h} pixels")
            ch = body[pos]
            pos += 1
            if ch not in "01":
                raise ParseError(f"P1 raster may only contain 0 and 1, got {ch!r}")
            digits.append(ch)
        rows = ["".join(digits[r * w:(r + 1) * w]) for r in range(h)]
        out.append(_rows_to_matrix(rows))
    return out


def _parse_json(text: str) -> list[BinaryMatrix]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid json: {exc}") from None
    if isinstance(data, dict):
        data = [data]
    if not isinstance(data, list):
        raise ParseError("json input must be an object or an array of objects")
    out = []
    for obj in data:
        if not isinstance(obj, dict) or "rows" not in obj:
            raise ParseError("each json record needs a 'rows' field")
        rows = obj["rows"]
        if (not isinstance(rows, list) or not rows
                or not all(isinstance(r, str) for r in rows)):
            raise ParseError("'rows' must be a non-empty list of strings")
        matrix = _rows_to_matrix(rows)
        for field, actual in (("m", matrix.rows_m), ("n", matrix.cols_n)):
            declared = obj.get(field)
            if declared is not None and declared != actual:
                raise ParseError(f"declared {field}={declared} but rows give {actual}")
        out.append(matrix)
    return out
