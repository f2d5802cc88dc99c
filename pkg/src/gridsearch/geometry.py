"""Lattice geometry: partial grids, frontiers, growth rectangles, rings.

Nodes are integer pairs (x, y). An edge joins two nodes at unit distance
and is stored with its endpoints sorted, smaller endpoint first.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from math import isqrt

from .errors import DanglingEdge, Disconnected, HomebaseMissing, NonUnitEdge

Coord = tuple[int, int]
Edge = tuple[Coord, Coord]


def edge_between(u: Coord, v: Coord) -> Edge:
    """Canonical form of the undirected edge {u, v}."""
    return (u, v) if u <= v else (v, u)


def unit_neighbors(p: Coord) -> tuple[Coord, Coord, Coord, Coord]:
    x, y = p
    return ((x - 1, y), (x + 1, y), (x, y - 1), (x, y + 1))


def ceil_sqrt(n: int) -> int:
    if n <= 0:
        return 0
    return isqrt(n - 1) + 1


@dataclass(frozen=True)
class PartialGrid:
    """Immutable connected subgraph of the unit lattice with a start node."""

    nodes: frozenset[Coord]
    edges: frozenset[Edge]
    homebase: Coord

    @cached_property
    def adjacency(self) -> dict[Coord, tuple[Coord, ...]]:
        adj: dict[Coord, list[Coord]] = {p: [] for p in sorted(self.nodes)}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return {p: tuple(sorted(nb)) for p, nb in adj.items()}

    @property
    def n(self) -> int:
        return len(self.nodes)

    @cached_property
    def side(self) -> int:
        return ceil_sqrt(self.n)


def make_grid(nodes, edges, homebase: Coord) -> PartialGrid:
    """Build a grid from any iterables, canonicalize edges, and validate."""
    grid = PartialGrid(
        nodes=frozenset((int(x), int(y)) for x, y in nodes),
        edges=frozenset(edge_between(tuple(u), tuple(v)) for u, v in edges),
        homebase=(int(homebase[0]), int(homebase[1])),
    )
    validate_grid(grid)
    return grid


def validate_grid(grid: PartialGrid) -> None:
    """Raise if the grid is not a connected piece of the unit lattice."""
    if grid.homebase not in grid.nodes:
        raise HomebaseMissing(f"homebase {grid.homebase} is not a node")
    for u, v in grid.edges:
        if u not in grid.nodes or v not in grid.nodes:
            raise DanglingEdge(f"edge {u}-{v} has an endpoint that is not a node")
        if abs(u[0] - v[0]) + abs(u[1] - v[1]) != 1:
            raise NonUnitEdge(f"edge {u}-{v} does not join lattice neighbors")
    seen = {grid.homebase}
    queue = deque([grid.homebase])
    adj = grid.adjacency
    while queue:
        for q in adj[queue.popleft()]:
            if q not in seen:
                seen.add(q)
                queue.append(q)
    if len(seen) != len(grid.nodes):
        raise Disconnected(f"{len(grid.nodes) - len(seen)} nodes unreachable from homebase")


@dataclass(frozen=True, order=True)
class Frontier:
    """Axis-aligned lattice segment; the seed line that growth layers wrap.

    A horizontal frontier with anchor (ax, ay) spans (ax, ay)..(ax+length, ay);
    a vertical one spans (ax, ay)..(ax, ay+length).
    """

    anchor: Coord
    horizontal: bool
    length: int

    def nodes(self) -> tuple[Coord, ...]:
        ax, ay = self.anchor
        if self.horizontal:
            return tuple((ax + j, ay) for j in range(self.length + 1))
        return tuple((ax, ay + j) for j in range(self.length + 1))


def ring_index(frontier: Frontier, p: Coord) -> int:
    """Index of the growth layer that p sits on (0 = the frontier itself).

    Layer i is the boundary of the i-th rectangle; every lattice point lies
    on exactly one layer, and lattice neighbors differ by at most 1.
    """
    ax, ay = frontier.anchor
    s = frontier.length
    px, py = p
    if frontier.horizontal:
        along = max(ax - px, px - (ax + s), 0)
        off = abs(py - ay)
    else:
        along = max(ay - py, py - (ay + s), 0)
        off = abs(px - ax)
    return max(along, off)


def rectangle_corners(frontier: Frontier, depth: int) -> tuple[Coord, Coord]:
    """Lower-left and upper-right corner of the depth-th rectangle."""
    ax, ay = frontier.anchor
    s = frontier.length
    if frontier.horizontal:
        return (ax - depth, ay - depth), (ax + s + depth, ay + depth)
    return (ax - depth, ay - depth), (ax + depth, ay + s + depth)


def rectangle_region_membership(frontier: Frontier, depth: int, p: Coord) -> bool:
    return ring_index(frontier, p) <= depth


def ring_nodes(frontier: Frontier, depth: int) -> list[Coord]:
    """All lattice points on layer `depth`, sorted by (x, y)."""
    if depth == 0:
        return sorted(frontier.nodes())
    (xlo, ylo), (xhi, yhi) = rectangle_corners(frontier, depth)
    out = []
    for x in range(xlo, xhi + 1):
        out.append((x, ylo))
        out.append((x, yhi))
    for y in range(ylo + 1, yhi):
        out.append((xlo, y))
        out.append((xhi, y))
    return sorted(out)


def frontiers_on_rectangle(frontier: Frontier) -> list[Frontier]:
    """The ten frontiers tiling the boundary of the length-th rectangle.

    Order is fixed: horizontal pieces bottom then top, left to right, then
    vertical pieces left then right, bottom to top. Corner nodes belong to
    the first listed frontier that contains them.
    """
    ax, ay = frontier.anchor
    s = frontier.length
    if frontier.horizontal:
        horiz = [(ax - s, ay - s), (ax, ay - s), (ax + s, ay - s),
                 (ax - s, ay + s), (ax, ay + s), (ax + s, ay + s)]
        vert = [(ax - s, ay - s), (ax - s, ay),
                (ax + 2 * s, ay - s), (ax + 2 * s, ay)]
    else:
        horiz = [(ax - s, ay - s), (ax, ay - s),
                 (ax - s, ay + 2 * s), (ax, ay + 2 * s)]
        vert = [(ax - s, ay - s), (ax - s, ay), (ax - s, ay + s),
                (ax + s, ay - s), (ax + s, ay), (ax + s, ay + s)]
    return ([Frontier(a, True, s) for a in horiz]
            + [Frontier(a, False, s) for a in vert])


def expansion(adjacency, frontier: Frontier, seeds, count: int) -> list[set[Coord]]:
    """Growth layers of a seed set: list of node sets, element 0 the seeds.

    Layer i holds the nodes first reached when movement is confined to the
    i-th rectangle, searching outward from layer i-1. Paths may pass through
    any earlier layer.
    """
    layers = [set(seeds)]
    expanded = set(seeds)
    for i in range(1, count + 1):
        seen = set(layers[-1])
        queue = deque(sorted(seen))
        while queue:
            u = queue.popleft()
            for v in adjacency.get(u, ()):
                if v in seen or ring_index(frontier, v) > i:
                    continue
                seen.add(v)
                queue.append(v)
        fresh = seen - expanded
        layers.append(fresh)
        expanded |= fresh
    return layers
