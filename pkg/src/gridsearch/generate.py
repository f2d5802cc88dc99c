"""Grid generators: seeded random partial grids and named fixture shapes."""

from __future__ import annotations

import itertools
import random

from .errors import EmptyComponent, GridFormatError
from .geometry import Coord, PartialGrid, make_grid
from .adversary import StairTree

NODE_CAP = 3600
RETRY_CAP = 64


def random_grid(seed: int, width: int, height: int, edge_keep_prob: float) -> PartialGrid:
    """A width x height lattice with edges dropped independently.

    Keeps the connected component of the corner (0, 0). An isolated corner
    is redrawn with a bumped attempt counter; the retry budget is finite so
    hopeless probabilities fail loudly instead of spinning.
    """
    if width < 1 or height < 1:
        raise GridFormatError("width and height must be at least 1")
    if not 0.0 <= edge_keep_prob <= 1.0:
        raise GridFormatError(f"edge keep probability {edge_keep_prob} outside [0, 1]")
    if width * height == 1:
        return make_grid([(0, 0)], [], (0, 0))
    for attempt in range(RETRY_CAP):
        rng = random.Random(f"{seed}:{attempt}")
        edges = []
        for x in range(width):
            for y in range(height):
                for q in ((x + 1, y), (x, y + 1)):
                    if q[0] < width and q[1] < height and rng.random() < edge_keep_prob:
                        edges.append(((x, y), q))
        adj: dict[Coord, list[Coord]] = {}
        for u, v in edges:
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
        comp = {(0, 0)}
        stack: list[Coord] = [(0, 0)]
        while stack:
            u = stack.pop()
            for v in adj.get(u, ()):
                if v not in comp:
                    comp.add(v)
                    stack.append(v)
        if len(comp) < 2:
            continue
        kept = [e for e in edges if e[0] in comp and e[1] in comp]
        return make_grid(sorted(comp), kept, (0, 0))
    raise EmptyComponent(
        f"corner stayed isolated through {RETRY_CAP} draws at keep probability {edge_keep_prob}"
    )


def random_partial_grid(seed: int, max_side: int = 60) -> PartialGrid:
    """A connected induced piece of a random rectangle, thinned twice.

    Node and edge keep probabilities are themselves drawn per attempt, so the
    corpus mixes near-full rectangles with sparse mazes. The largest connected
    component wins; grids that come out smaller than two nodes are redrawn
    with a bumped attempt counter, keeping results a pure function of seed.
    """
    if max_side < 2:
        raise GridFormatError("max_side must be at least 2")
    for attempt in itertools.count():
        rng = random.Random(f"{seed}:{attempt}")
        w = rng.randint(2, max_side)
        h = rng.randint(2, min(max_side, max(2, NODE_CAP // w)))
        node_p = rng.uniform(0.55, 0.95)
        edge_p = rng.uniform(0.85, 1.0)
        nodes = set()
        for x in range(w):
            for y in range(h):
                if rng.random() < node_p:
                    nodes.add((x, y))
        edges = []
        for x in range(w):
            for y in range(h):
                p = (x, y)
                if p not in nodes:
                    continue
                for q in ((x + 1, y), (x, y + 1)):
                    if q in nodes and rng.random() < edge_p:
                        edges.append((p, q))

        adj: dict[Coord, list[Coord]] = {}
        for u, v in edges:
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
        seen: set[Coord] = set()
        comps: list[set[Coord]] = []
        for start in sorted(nodes):
            if start in seen:
                continue
            comp = {start}
            stack = [start]
            while stack:
                u = stack.pop()
                for v in adj.get(u, ()):
                    if v not in comp:
                        comp.add(v)
                        stack.append(v)
            seen |= comp
            comps.append(comp)
        # biggest component; among equals the one with the smallest node
        best = max(comps, key=lambda c: (len(c), tuple(-v for v in min(c))))
        if len(best) < 2:
            continue
        hx, hy = min(best)
        moved_nodes = [(x - hx, y - hy) for (x, y) in best]
        moved_edges = [
            ((ux - hx, uy - hy), (vx - hx, vy - hy))
            for (ux, uy), (vx, vy) in edges
            if (ux, uy) in best and (vx, vy) in best
        ]
        return make_grid(moved_nodes, moved_edges, (0, 0))
    raise AssertionError("unreachable")


def _rect(w: int, h: int) -> tuple[list[Coord], list[tuple[Coord, Coord]]]:
    nodes = [(x, y) for x in range(w) for y in range(h)]
    edges = []
    for x, y in nodes:
        if x + 1 < w:
            edges.append(((x, y), (x + 1, y)))
        if y + 1 < h:
            edges.append(((x, y), (x, y + 1)))
    return nodes, edges


def _path_fixture(length: int) -> PartialGrid:
    nodes, edges = _rect(length, 1)
    return make_grid(nodes, edges, (0, 0))


def _comb_fixture() -> PartialGrid:
    nodes = [(x, 0) for x in range(15)]
    edges = [((x, 0), (x + 1, 0)) for x in range(14)]
    for x in range(0, 15, 2):
        for y in range(1, 6):
            nodes.append((x, y))
            edges.append(((x, y - 1), (x, y)))
    return make_grid(nodes, edges, (0, 0))


def _spiral_fixture() -> PartialGrid:
    lengths = [14, 14, 14, 12, 12, 10, 10, 8, 8, 6, 6, 4, 4, 2, 2]
    dirs = itertools.cycle([(1, 0), (0, 1), (-1, 0), (0, -1)])
    pts = [(0, 0)]
    x = y = 0
    for n, (dx, dy) in zip(lengths, dirs):
        for _ in range(n):
            x, y = x + dx, y + dy
            pts.append((x, y))
    edges = list(zip(pts, pts[1:]))
    return make_grid(pts, edges, (0, 0))


def _ring_fixture() -> PartialGrid:
    nodes = [
        (x, y)
        for x in range(12)
        for y in range(12)
        if not (2 <= x < 10 and 2 <= y < 10)
    ]
    kept = set(nodes)
    edges = []
    for x, y in nodes:
        for q in ((x + 1, y), (x, y + 1)):
            if q in kept:
                edges.append(((x, y), q))
    return make_grid(nodes, edges, (0, 0))


def _cross_fixture() -> PartialGrid:
    kept = {(x, y) for x in range(21) for y in range(3)}
    kept |= {(x, y) for x in range(9, 12) for y in range(-9, 12)}
    edges = []
    for x, y in sorted(kept):
        for q in ((x + 1, y), (x, y + 1)):
            if q in kept:
                edges.append(((x, y), q))
    return make_grid(sorted(kept), edges, (0, 0))


def fixture_grids() -> dict[str, PartialGrid]:
    return {
        "path": _path_fixture(30),
        "comb": _comb_fixture(),
        "spiral": _spiral_fixture(),
        "ring": _ring_fixture(),
        "cross": _cross_fixture(),
        "stairs": StairTree((0, 1, 1, 0, 3, 2, 1, 6)).to_grid(),
        "dense": make_grid(*_rect(20, 20), (0, 0)),
    }
