"""One layer-clearing call: sweep every reachable contaminated edge of a layer.

A task names a frontier, a depth, and the anchor nodes currently guarded on
behalf of that frontier. The call absorbs outward from the anchors through
known nodes of the layer (every node within ring distance `depth` of the
frontier), clears each contaminated edge whose endpoints both lie in the
layer, and leaves guards only where contamination still touches the cleaned
region, which by the ring geometry is on the outermost ring alone.

Edges are processed in a single global order: lowest column along the
frontier axis first. A cleaner is any busy searcher below the outer ring;
searchers that end up guarding the outer ring are counted as explorers and
excluded from the cleaner peak.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .crew import Crew
from .errors import AlgorithmStalled
from .geometry import Coord, Edge, Frontier, edge_between, ring_index


@dataclass(frozen=True)
class StripTask:
    frontier: Frontier
    depth: int
    anchors: tuple[Coord, ...]


@dataclass
class StripReport:
    depth: int
    peak_cleaners: int
    explorers_placed: int
    cleared_edges: int
    first_visits: int
    moves: int


def clean_strip(crew: Crew, task: StripTask) -> StripReport:
    state, view = crew.state, crew.view
    frontier, depth = task.frontier, task.depth

    def col(p: Coord) -> int:
        return p[0] if frontier.horizontal else p[1]

    absorbed: set[Coord] = set()
    pushed: set[Edge] = set()
    heap: list[tuple[int, Coord, Coord]] = []

    def absorb(start: Coord) -> None:
        # Walk the known nodes of the layer reachable from start, crossing
        # edges in either state; queue every contaminated in-layer edge.
        stack = [start]
        while stack:
            u = stack.pop()
            if u in absorbed or ring_index(frontier, u) > depth:
                continue
            absorbed.add(u)
            for q in view.ports(u):
                if ring_index(frontier, q) > depth:
                    continue
                if not view.edge_clean(u, q):
                    e = edge_between(u, q)
                    if e not in pushed:
                        pushed.add(e)
                        heapq.heappush(heap, (min(col(u), col(q)), *e))
                if view.is_visited(q) and q not in absorbed:
                    stack.append(q)

    cleaner_pins: set[Coord] = set()
    peak_cleaners = 0
    explorers_placed = 0
    cleared = 0
    first_visits = 0
    moves_before = len(crew.trace.moves)

    for a in task.anchors:
        absorb(a)

    while heap:
        _, u, v = heapq.heappop(heap)
        if state.is_edge_clean(u, v):
            continue
        if u in absorbed:
            access, target = u, v
        else:
            assert v in absorbed, f"edge {(u, v)} queued with no absorbed endpoint"
            access, target = v, u

        sid = crew.draw_at(access)
        peak_cleaners = max(peak_cleaners, len(cleaner_pins) + 1)
        rep = crew.slide(sid, target)
        cleared += 1
        first_visits += rep.first_visit
        absorb(target)

        if crew.settle_arrival(sid, target):
            if ring_index(frontier, target) == depth:
                explorers_placed += 1
            else:
                cleaner_pins.add(target)
        for p in (access, target):
            if crew.release_if_safe(p):
                cleaner_pins.discard(p)

    if cleaner_pins:
        raise AlgorithmStalled(f"guards left below the outer ring: {sorted(cleaner_pins)}")
    return StripReport(
        depth=depth,
        peak_cleaners=peak_cleaners,
        explorers_placed=explorers_placed,
        cleared_edges=cleared,
        first_visits=first_visits,
        moves=len(crew.trace.moves) - moves_before,
    )
