"""Contamination game state, slide mechanics, and trace verification.

Every edge starts contaminated. Sliding a searcher along an edge cleans
it. A clean edge turns contaminated again whenever one of its endpoints
is unoccupied and also touches a contaminated edge; the effect cascades
until stable. A strategy is monotone when that never happens, connected
when the clean subgraph stays connected after every move, and complete
when every edge ends clean.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import FogViolation, IllegalMove
from .geometry import Coord, Edge, PartialGrid, edge_between


@dataclass(frozen=True)
class Move:
    searcher: int
    src: Coord
    dst: Coord


@dataclass
class StrategyTrace:
    """A searcher count plus the slides they perform, in order.

    Searchers are numbered from 0 and all begin at the homebase. Notes are
    (move_index, text) markers; they carry no game meaning.
    """

    k: int = 0
    moves: list[Move] = field(default_factory=list)
    notes: list[tuple[int, str]] = field(default_factory=list)

    def note(self, text: str) -> None:
        self.notes.append((len(self.moves), text))


@dataclass
class SlideReport:
    cleaned: Edge | None
    recontaminated: tuple[Edge, ...]
    first_visit: bool


class SearchState:
    """Mutable game position: edge states, occupancy, and visit record."""

    def __init__(self, grid: PartialGrid, searchers: int = 0):
        self.grid = grid
        self.adj: dict[Coord, tuple[Coord, ...]] = dict(grid.adjacency)
        self.edge_count = len(grid.edges)
        self.clean: set[Edge] = set()
        self.clean_adj: dict[Coord, list[Coord]] = {}
        self.clean_deg: dict[Coord, int] = {}
        self.contam_deg: dict[Coord, int] = {
            p: len(nb) for p, nb in self.adj.items() if nb
        }
        self.positions: list[Coord] = []
        self.occupancy: dict[Coord, int] = {}
        self.visited: set[Coord] = {grid.homebase}
        self.on_first_visit = None
        for _ in range(searchers):
            self.place_searcher()

    def place_searcher(self) -> int:
        """Introduce a new searcher at the homebase; returns its id."""
        h = self.grid.homebase
        self.positions.append(h)
        self.occupancy[h] = self.occupancy.get(h, 0) + 1
        return len(self.positions) - 1

    def occupied(self, p: Coord) -> bool:
        return self.occupancy.get(p, 0) > 0

    def is_edge_clean(self, u: Coord, v: Coord) -> bool:
        return edge_between(u, v) in self.clean

    def needs_guard(self, p: Coord) -> bool:
        """True when p touches both a clean and a contaminated edge."""
        return self.clean_deg.get(p, 0) > 0 and self.contam_deg.get(p, 0) > 0

    def contaminated_ports(self, p: Coord) -> list[Coord]:
        return [q for q in self.adj.get(p, ()) if edge_between(p, q) not in self.clean]

    def is_clean(self) -> bool:
        return len(self.clean) == self.edge_count

    def apply_slide(self, searcher: int, dst: Coord) -> SlideReport:
        if not 0 <= searcher < len(self.positions):
            raise IllegalMove(f"no searcher {searcher}")
        src = self.positions[searcher]
        if dst not in self.adj.get(src, ()):
            raise IllegalMove(f"{src}-{dst} is not an edge")
        self.positions[searcher] = dst
        self.occupancy[src] -= 1
        if not self.occupancy[src]:
            del self.occupancy[src]
        self.occupancy[dst] = self.occupancy.get(dst, 0) + 1
        e = edge_between(src, dst)
        cleaned = None
        if e not in self.clean:
            self._set_clean(e)
            cleaned = e
        first = dst not in self.visited
        if first:
            self.visited.add(dst)
        # only the vacated endpoint can newly satisfy the recontamination rule
        recont = self._settle([src])
        if first and self.on_first_visit is not None:
            self.on_first_visit(dst)
        return SlideReport(cleaned, recont, first)

    def grow(self, new_nodes, new_edges) -> None:
        """Extend the underlying graph mid-game; new edges are contaminated.

        Existing clean edges are re-settled afterwards, so a careless
        extension shows up honestly as recontamination.
        """
        adj: dict[Coord, list[Coord]] = {p: list(nb) for p, nb in self.adj.items()}
        for p in new_nodes:
            adj.setdefault(p, [])
        touched = []
        for u, v in new_edges:
            e = edge_between(u, v)
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
            self.contam_deg[u] = self.contam_deg.get(u, 0) + 1
            self.contam_deg[v] = self.contam_deg.get(v, 0) + 1
            self.edge_count += 1
            touched.extend(e)
        self.adj = {p: tuple(sorted(nb)) for p, nb in adj.items()}
        self._settle(touched)

    def _set_clean(self, e: Edge) -> None:
        u, v = e
        self.clean.add(e)
        self.clean_deg[u] = self.clean_deg.get(u, 0) + 1
        self.clean_deg[v] = self.clean_deg.get(v, 0) + 1
        self.contam_deg[u] -= 1
        self.contam_deg[v] -= 1
        self.clean_adj.setdefault(u, []).append(v)
        self.clean_adj.setdefault(v, []).append(u)

    def _set_contaminated(self, e: Edge) -> None:
        u, v = e
        self.clean.remove(e)
        self.clean_deg[u] -= 1
        self.clean_deg[v] -= 1
        self.contam_deg[u] = self.contam_deg.get(u, 0) + 1
        self.contam_deg[v] = self.contam_deg.get(v, 0) + 1
        self.clean_adj[u].remove(v)
        self.clean_adj[v].remove(u)

    def _settle(self, candidates) -> tuple[Edge, ...]:
        """Recontamination fixpoint, seeded at the given nodes."""
        lost: list[Edge] = []
        queue = deque(candidates)
        while queue:
            u = queue.popleft()
            if (self.occupancy.get(u, 0) > 0
                    or self.clean_deg.get(u, 0) == 0
                    or self.contam_deg.get(u, 0) == 0):
                continue
            for v in list(self.clean_adj.get(u, ())):
                e = edge_between(u, v)
                self._set_contaminated(e)
                lost.append(e)
                queue.append(v)
        return tuple(lost)


class ExploredView:
    """What an online strategy is allowed to see: visited nodes only.

    Port queries on a node nobody has reached raise FogViolation, keeping
    strategies honest about operating on an unknown graph.
    """

    def __init__(self, state: SearchState):
        self._state = state

    def is_visited(self, p: Coord) -> bool:
        return p in self._state.visited

    def ports(self, p: Coord) -> tuple[Coord, ...]:
        if p not in self._state.visited:
            raise FogViolation(f"ports of unvisited node {p}")
        return self._state.adj.get(p, ())

    def edge_clean(self, u: Coord, v: Coord) -> bool:
        if u not in self._state.visited and v not in self._state.visited:
            raise FogViolation(f"edge {u}-{v} not incident to a visited node")
        return self._state.is_edge_clean(u, v)

    def contaminated_ports(self, p: Coord) -> list[Coord]:
        if p not in self._state.visited:
            raise FogViolation(f"ports of unvisited node {p}")
        return self._state.contaminated_ports(p)

    def needs_guard(self, p: Coord) -> bool:
        if p not in self._state.visited:
            raise FogViolation(f"guard query on unvisited node {p}")
        return self._state.needs_guard(p)


@dataclass
class VerificationReport:
    k: int
    n_moves: int
    monotone: bool
    connected: bool
    complete: bool
    violations: list[tuple[int, str]]

    @property
    def ok(self) -> bool:
        return self.monotone and self.connected and self.complete


def _clean_subgraph_connected(state: SearchState) -> bool:
    touched = sorted(p for p, d in state.clean_deg.items() if d > 0)
    if not touched:
        return True
    seen = {touched[0]}
    queue = deque(seen)
    while queue:
        for q in state.clean_adj.get(queue.popleft(), ()):
            if q not in seen:
                seen.add(q)
                queue.append(q)
    return all(p in seen for p in touched)


def verify_trace(grid: PartialGrid, trace: StrategyTrace) -> VerificationReport:
    """Replay a trace and judge it monotone, connected, and complete.

    All k searchers start at the homebase; a strategy that introduces them
    lazily replays identically because parked searchers never matter.
    """
    state = SearchState(grid, searchers=trace.k)
    violations: list[tuple[int, str]] = []
    monotone = True
    connected = True
    clean_nodes: set[Coord] = set()
    for idx, mv in enumerate(trace.moves):
        if not 0 <= mv.searcher < trace.k:
            violations.append((idx, f"searcher {mv.searcher} out of range"))
            break
        if state.positions[mv.searcher] != mv.src:
            violations.append((idx, f"searcher {mv.searcher} is not at {mv.src}"))
            break
        try:
            rep = state.apply_slide(mv.searcher, mv.dst)
        except IllegalMove as exc:
            violations.append((idx, str(exc)))
            break
        if rep.recontaminated:
            if monotone:
                violations.append((idx, f"recontaminated {len(rep.recontaminated)} edges"))
            monotone = False
        if monotone:
            # incremental check: a new clean edge must touch the clean subgraph
            if rep.cleaned is not None:
                u, v = rep.cleaned
                if clean_nodes and u not in clean_nodes and v not in clean_nodes:
                    if connected:
                        violations.append((idx, f"clean subgraph split at {rep.cleaned}"))
                    connected = False
                clean_nodes.update(rep.cleaned)
        elif not _clean_subgraph_connected(state):
            if connected:
                violations.append((idx, "clean subgraph disconnected"))
            connected = False
    complete = state.is_clean()
    if not complete:
        violations.append((len(trace.moves), f"{state.edge_count - len(state.clean)} edges never cleaned"))
    return VerificationReport(
        k=trace.k,
        n_moves=len(trace.moves),
        monotone=monotone,
        connected=connected,
        complete=complete,
        violations=violations,
    )
