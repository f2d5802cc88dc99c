"""Plain-text file formats for grids and traces.

Both formats are line oriented. Blank lines and lines starting with '#'
are ignored on read; writers emit sorted, normalized output so identical
inputs give byte-identical files.
"""

from __future__ import annotations

from pathlib import Path

from .errors import GridFormatError
from .geometry import PartialGrid, edge_between, make_grid
from .state import Move, StrategyTrace

GRID_MAGIC = "gridsearch-grid v1"
TRACE_MAGIC = "gridsearch-trace v1"


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line.split()


def _ints(parts, count, lineno):
    if len(parts) != count:
        raise GridFormatError(f"line {lineno}: expected {count} fields, got {len(parts)}")
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise GridFormatError(f"line {lineno}: non-integer field") from None


def grid_to_text(grid: PartialGrid) -> str:
    lines = [GRID_MAGIC]
    lines.append(f"homebase {grid.homebase[0]} {grid.homebase[1]}")
    for x, y in sorted(grid.nodes):
        lines.append(f"node {x} {y}")
    for (ux, uy), (vx, vy) in sorted(grid.edges):
        lines.append(f"edge {ux} {uy} {vx} {vy}")
    return "\n".join(lines) + "\n"


def grid_from_text(text: str) -> PartialGrid:
    rows = _content_lines(text)
    try:
        _, first = next(rows)
    except StopIteration:
        raise GridFormatError("empty grid file") from None
    if " ".join(first) != GRID_MAGIC:
        raise GridFormatError(f"bad header, expected '{GRID_MAGIC}'")
    homebase = None
    nodes: set = set()
    edges: set = set()
    for lineno, parts in rows:
        kind, rest = parts[0], parts[1:]
        if kind == "homebase":
            if homebase is not None:
                raise GridFormatError(f"line {lineno}: duplicate homebase")
            x, y = _ints(rest, 2, lineno)
            homebase = (x, y)
        elif kind == "node":
            x, y = _ints(rest, 2, lineno)
            if (x, y) in nodes:
                raise GridFormatError(f"line {lineno}: duplicate node {(x, y)}")
            nodes.add((x, y))
        elif kind == "edge":
            ux, uy, vx, vy = _ints(rest, 4, lineno)
            e = edge_between((ux, uy), (vx, vy))
            if e in edges:
                raise GridFormatError(f"line {lineno}: duplicate edge {e}")
            edges.add(e)
        else:
            raise GridFormatError(f"line {lineno}: unknown directive '{kind}'")
    if homebase is None:
        raise GridFormatError("missing homebase line")
    hx, hy = homebase
    if (hx, hy) != (0, 0):
        # loaded grids are always homebase-at-origin
        nodes = {(x - hx, y - hy) for x, y in nodes}
        edges = {((ux - hx, uy - hy), (vx - hx, vy - hy)) for (ux, uy), (vx, vy) in edges}
        homebase = (0, 0)
    return make_grid(nodes, edges, homebase)


def write_grid(grid: PartialGrid, path) -> None:
    Path(path).write_text(grid_to_text(grid))


def read_grid(path) -> PartialGrid:
    return grid_from_text(Path(path).read_text())


def trace_to_text(trace: StrategyTrace) -> str:
    notes = sorted(trace.notes, key=lambda it: it[0])
    lines = [TRACE_MAGIC, f"k {trace.k}"]
    ni = 0
    for idx, mv in enumerate(trace.moves):
        while ni < len(notes) and notes[ni][0] <= idx:
            lines.append(f"# {notes[ni][1]}")
            ni += 1
        lines.append(f"slide {mv.searcher} {mv.src[0]} {mv.src[1]} {mv.dst[0]} {mv.dst[1]}")
    for _, text in notes[ni:]:
        lines.append(f"# {text}")
    return "\n".join(lines) + "\n"


def trace_from_text(text: str) -> StrategyTrace:
    rows = _content_lines(text)
    try:
        _, first = next(rows)
    except StopIteration:
        raise GridFormatError("empty trace file") from None
    if " ".join(first) != TRACE_MAGIC:
        raise GridFormatError(f"bad header, expected '{TRACE_MAGIC}'")
    k = None
    moves: list[Move] = []
    for lineno, parts in rows:
        kind, rest = parts[0], parts[1:]
        if kind == "k":
            if k is not None:
                raise GridFormatError(f"line {lineno}: duplicate k line")
            (k,) = _ints(rest, 1, lineno)
            if k < 0:
                raise GridFormatError(f"line {lineno}: negative searcher count")
        elif kind == "slide":
            sid, sx, sy, dx, dy = _ints(rest, 5, lineno)
            moves.append(Move(sid, (sx, sy), (dx, dy)))
        else:
            raise GridFormatError(f"line {lineno}: unknown directive '{kind}'")
    if k is None:
        raise GridFormatError("missing k line")
    return StrategyTrace(k=k, moves=moves)


def write_trace(trace: StrategyTrace, path) -> None:
    Path(path).write_text(trace_to_text(trace))


def read_trace(path) -> StrategyTrace:
    return trace_from_text(Path(path).read_text())
