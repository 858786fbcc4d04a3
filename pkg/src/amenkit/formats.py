"""Text file formats and command-line value parsing.

All indices are 0-based.  Blank lines and lines starting with ``#`` are
ignored; line numbers in errors refer to the original text.
"""

from __future__ import annotations

import re
from fractions import Fraction
from pathlib import Path

from amenkit.digraph import Digraph
from amenkit.errors import AmenkitError, ParseError
from amenkit.semigroup import FiniteSemigroup, validate_table
from amenkit.universe import (
    Universe,
    bicyclic_universe,
    free_universe,
    freecomm_universe,
    table_universe,
    transformation_universe,
)


def _lines(text: str):
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield i, line


def _ints(lineno: int, line: str) -> list[int]:
    try:
        return [int(tok) for tok in line.split()]
    except ValueError:
        raise ParseError(lineno, f"expected integers, got {line!r}") from None


def _header(lines, keyword: str, arity: int):
    try:
        lineno, line = next(lines)
    except StopIteration:
        raise ParseError(1, f"missing '{keyword}' header") from None
    parts = line.split()
    if not parts or parts[0] != keyword or len(parts) != arity + 1:
        raise ParseError(lineno, f"expected '{keyword}' followed by {arity} integer(s)")
    return lineno, _ints(lineno, " ".join(parts[1:]))


def _body(lines, count: int, width: int | None, what: str, last: int):
    rows = []
    for lineno, line in lines:
        if len(rows) == count:
            raise ParseError(lineno, f"unexpected extra line after {count} {what}")
        vals = _ints(lineno, line)
        if width is not None and len(vals) != width:
            raise ParseError(lineno, f"expected {width} integers, got {len(vals)}")
        rows.append((lineno, vals))
        last = lineno
    if len(rows) != count:
        raise ParseError(last + 1, f"expected {count} {what}, got {len(rows)}")
    return rows


def parse_table(text: str) -> FiniteSemigroup:
    lines = _lines(text)
    lineno, (n,) = _header(lines, "table", 1)
    if n < 1:
        raise ParseError(lineno, "table size must be positive")
    rows = _body(lines, n, n, "rows", lineno)
    for ln, vals in rows:
        for v in vals:
            if not 0 <= v < n:
                raise ParseError(ln, f"entry {v} out of range [0, {n})")
    try:
        return validate_table(n, [vals for _, vals in rows])
    except AmenkitError as e:
        raise ParseError(lineno, str(e)) from e


def format_table(S: FiniteSemigroup) -> str:
    return "\n".join([f"table {S.n}"] + [" ".join(map(str, row)) for row in S.table]) + "\n"


def parse_transformations(text: str) -> tuple[int, list[tuple[int, ...]]]:
    lines = _lines(text)
    lineno, (n, k) = _header(lines, "transformations", 2)
    if n < 1 or k < 1:
        raise ParseError(lineno, "degree and generator count must be positive")
    rows = _body(lines, k, n, "maps", lineno)
    for ln, vals in rows:
        if any(not 0 <= v < n for v in vals):
            raise ParseError(ln, f"image out of range [0, {n})")
    return n, [tuple(vals) for _, vals in rows]


def parse_digraph(text: str) -> Digraph:
    lines = _lines(text)
    lineno, (n, m) = _header(lines, "digraph", 2)
    if n < 0 or m < 0:
        raise ParseError(lineno, "counts must be non-negative")
    rows = _body(lines, m, 2, "edges", lineno)
    seen = set()
    for ln, (u, v) in rows:
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(ln, f"edge ({u}, {v}) out of range for n={n}")
        if (u, v) in seen:
            raise ParseError(ln, f"duplicate edge ({u}, {v})")
        seen.add((u, v))
    return Digraph.from_edges(n, [tuple(vals) for _, vals in rows])


def format_digraph(G: Digraph) -> str:
    edges = list(G.edges())
    return "\n".join([f"digraph {G.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]) + "\n"


def parse_vertex_map(text: str, n: int | None = None) -> list[int]:
    """Lines ``i j`` meaning phi(i) = j; every i in range(n) exactly once."""
    pairs = {}
    last = 0
    for lineno, line in _lines(text):
        vals = _ints(lineno, line)
        if len(vals) != 2:
            raise ParseError(lineno, "expected 'i j'")
        i, j = vals
        if i in pairs:
            raise ParseError(lineno, f"vertex {i} mapped twice")
        if i < 0 or j < 0:
            raise ParseError(lineno, "negative vertex index")
        pairs[i] = j
        last = lineno
    size = len(pairs) if n is None else n
    if sorted(pairs) != list(range(size)):
        raise ParseError(last + 1, f"map must cover vertices 0..{size - 1} exactly")
    return [pairs[i] for i in range(size)]


def format_vertex_map(phi) -> str:
    return "".join(f"{i} {j}\n" for i, j in enumerate(phi))


_RATIO = re.compile(r"^\s*(\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_ratio(text: str) -> Fraction:
    """Exact non-negative rational written ``p/q`` or ``p``; floats are rejected."""
    m = _RATIO.match(text)
    if not m or (m.group(2) is not None and int(m.group(2)) == 0):
        raise ParseError(1, f"expected a rational p/q, got {text!r}")
    return Fraction(int(m.group(1)), int(m.group(2) or 1))


def load_universe(source: str) -> Universe:
    """``free:k``, ``freecomm:k``, ``bicyclic``, ``table:PATH``, ``transformations:PATH``."""
    kind, _, arg = source.partition(":")
    try:
        if kind == "free":
            return free_universe(int(arg))
        if kind == "freecomm":
            return freecomm_universe(int(arg))
        if kind == "bicyclic" and not arg:
            return bicyclic_universe()
        if kind == "table":
            return table_universe(parse_table(Path(arg).read_text()))
        if kind == "transformations":
            return transformation_universe(*parse_transformations(Path(arg).read_text()))
    except ValueError as e:
        if isinstance(e, ParseError):
            raise
        raise ParseError(1, f"bad universe {source!r}: {e}") from e
    except OSError as e:
        raise ParseError(0, f"cannot read {arg!r}: {e.strerror}") from e
    raise ParseError(1, f"unknown universe {source!r}")
