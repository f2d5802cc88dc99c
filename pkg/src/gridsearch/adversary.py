"""Staircase trees that grow in response to exploration.

A stair tree of depth l spans every lattice node with x, y >= 0 and
x + y <= l. The nodes of each diagonal x + y = d hang off the previous
diagonal as a tree: extending from depth d with bend choice i adds the up
edge at every column j <= i and the right edge at every column j >= i, so
each new node gets exactly one parent. The bend sequence sigma lists the
bend node (i, d - i) of every extension and identifies the tree.

The adaptive builder starts from depth 1 and waits: the first time a
searcher steps onto a node of the current deepest diagonal, that node
becomes the bend of the next extension. New edges appear either at the
just-occupied node or at unvisited nodes, which is why growth can never
recontaminate anything. Cleaning the last parent edge of the deepest
diagonal requires stepping onto it, so a run can only finish after the
tree has reached full depth.
"""

from __future__ import annotations

from dataclasses import dataclass

from .engine import SweepEngine, greedy_flood_state
from .errors import AlgorithmStalled, GridFormatError
from .geometry import Coord, Edge, PartialGrid, ceil_sqrt, edge_between, make_grid
from .state import SearchState, StrategyTrace


def stair_node_count(depth: int) -> int:
    return (depth + 1) * (depth + 2) // 2


class StairTree:
    def __init__(self, choices: list[int] | tuple[int, ...] = (0,)):
        self.nodes: set[Coord] = {(0, 0)}
        self.edges: set[Edge] = set()
        self.choices: list[int] = []
        for i in choices:
            self.extend(i)

    @property
    def depth(self) -> int:
        return len(self.choices)

    def extend(self, choice: int) -> tuple[list[Coord], list[Edge]]:
        """Grow one diagonal; returns the added nodes and edges."""
        d = self.depth
        if not 0 <= choice <= d:
            raise ValueError(f"bend {choice} out of range for depth {d}")
        new_nodes = [(j, d + 1 - j) for j in range(d + 2)]
        new_edges = []
        for j in range(d + 1):
            src = (j, d - j)
            if j <= choice:
                new_edges.append(edge_between(src, (j, d - j + 1)))
            if j >= choice:
                new_edges.append(edge_between(src, (j + 1, d - j)))
        self.nodes.update(new_nodes)
        self.edges.update(new_edges)
        self.choices.append(choice)
        return new_nodes, new_edges

    def sigma(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, d - i) for d, i in enumerate(self.choices))

    @staticmethod
    def from_sigma(pairs) -> "StairTree":
        choices = []
        for d, (x, y) in enumerate(pairs):
            if x + y != d or x < 0 or y < 0:
                raise GridFormatError(f"bend {d} is {(x, y)}, not on diagonal {d}")
            choices.append(x)
        return StairTree(choices)

    def to_grid(self) -> PartialGrid:
        return make_grid(self.nodes, self.edges, (0, 0))

    def leaf_count(self) -> int:
        deg: dict[Coord, int] = {}
        for u, v in self.edges:
            deg[u] = deg.get(u, 0) + 1
            deg[v] = deg.get(v, 0) + 1
        return sum(1 for p in self.nodes if deg.get(p, 0) == 1)


def mirrored_grid(tree: StairTree) -> PartialGrid:
    """The tree unioned with its half-turn about the root."""
    nodes = set(tree.nodes) | {(-x, -y) for x, y in tree.nodes}
    edges = set(tree.edges) | {
        edge_between((-ux, -uy), (-vx, -vy)) for (ux, uy), (vx, vy) in tree.edges
    }
    return make_grid(nodes, edges, (0, 0))


class AdaptiveAdversary:
    """Grows the tree one diagonal per first touch of the deepest diagonal."""

    def __init__(self, target_depth: int):
        if target_depth < 1:
            raise ValueError("target depth must be at least 1")
        self.target = target_depth
        self.tree = StairTree()
        self.state: SearchState | None = None

    def attach(self, state: SearchState) -> None:
        self.state = state
        state.on_first_visit = self._on_first_visit

    def _on_first_visit(self, p: Coord) -> None:
        x, y = p
        if x + y == self.tree.depth and self.tree.depth < self.target:
            new_nodes, new_edges = self.tree.extend(x)
            self.state.grow(new_nodes, new_edges)


@dataclass
class GameResult:
    algorithm: str
    depth: int
    sigma: tuple[tuple[int, int], ...]
    final_grid: PartialGrid
    trace: StrategyTrace
    peak: int

    @property
    def lower_bound_ok(self) -> bool:
        # any connected monotone clean-up of a depth-l stair tree needs
        # at least (l + 1) / 2 searchers
        return 2 * self.peak >= self.depth + 1

    def metrics(self) -> dict:
        return {
            "kind": "game",
            "algorithm": self.algorithm,
            "l": self.depth,
            "n_nodes": len(self.final_grid.nodes),
            "n_edges": len(self.final_grid.edges),
            "peak": self.peak,
            "lower_bound": (self.depth + 1) / 2,
            "lower_bound_ok": self.lower_bound_ok,
            "moves": len(self.trace.moves),
        }


def run_adversary_game(depth: int, algorithm: str = "sweep") -> GameResult:
    """Play one strategy against the adaptive tree; returns the full record."""
    adv = AdaptiveAdversary(depth)
    state = SearchState(adv.tree.to_grid())
    adv.attach(state)
    if algorithm == "sweep":
        side = ceil_sqrt(stair_node_count(depth))
        result = SweepEngine(state, side).run()
        trace, peak = result.trace, result.k_peak
    elif algorithm == "flood":
        flood = greedy_flood_state(state)
        trace, peak = flood.trace, flood.k_peak
    else:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    if adv.tree.depth != depth:
        raise AlgorithmStalled(
            f"game ended at depth {adv.tree.depth} before the tree reached {depth}"
        )
    return GameResult(
        algorithm=algorithm,
        depth=depth,
        sigma=adv.tree.sigma(),
        final_grid=adv.tree.to_grid(),
        trace=trace,
        peak=peak,
    )
