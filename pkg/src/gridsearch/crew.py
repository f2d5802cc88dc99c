"""Shared searcher mechanics: idle pool, guard posts, safe movement.

A Crew wraps one game state and one trace. Searchers are introduced at the
homebase on demand, travel only over clean edges, and park either as idle
bodies on safe nodes or as pinned guards on nodes that touch contamination.
Sweep strategies build on these primitives; none of them moves a searcher
any other way, which is what keeps their traces monotone by construction.
"""

from __future__ import annotations

from collections import deque

from .errors import AlgorithmStalled, BudgetExceeded
from .geometry import Coord
from .state import ExploredView, Move, SearchState, SlideReport, StrategyTrace


class Crew:
    def __init__(self, state: SearchState, trace: StrategyTrace, budget: int | None = None):
        self.state = state
        self.view = ExploredView(state)
        self.trace = trace
        self.budget = budget
        self.total = 0
        self.idle: dict[Coord, list[int]] = {}
        self.pins: dict[Coord, int] = {}
        self.on_pin = None
        self.on_release = None
        self.on_cleaned = None

    def introduce(self) -> int:
        if self.budget is not None and self.total >= self.budget:
            raise BudgetExceeded(f"team budget {self.budget} exhausted")
        sid = self.state.place_searcher()
        self.total += 1
        self.idle.setdefault(self.state.grid.homebase, []).append(sid)
        return sid

    def slide(self, sid: int, dst: Coord) -> SlideReport:
        src = self.state.positions[sid]
        rep = self.state.apply_slide(sid, dst)
        self.trace.moves.append(Move(sid, src, dst))
        if rep.recontaminated:
            raise AlgorithmStalled(f"recontamination after leaving {src}")
        if rep.cleaned is not None and self.on_cleaned is not None:
            self.on_cleaned(rep.cleaned)
        return rep

    def _pop_idle(self, node: Coord) -> int:
        stack = self.idle[node]
        sid = stack.pop()
        if not stack:
            del self.idle[node]
        return sid

    def draw_at(self, target: Coord) -> int:
        """Bring the nearest idle searcher to target along clean edges.

        A new searcher is introduced at the homebase when nobody is idle.
        The searcher ends standing on target and is neither idle nor pinned.
        """
        if self.idle.get(target):
            return self._pop_idle(target)
        parent: dict[Coord, Coord | None] = {target: None}
        queue = deque([target])
        found = None
        while queue:
            u = queue.popleft()
            if self.idle.get(u):
                found = u
                break
            for v in sorted(self.state.clean_adj.get(u, ())):
                if v not in parent:
                    parent[v] = u
                    queue.append(v)
        if found is None:
            home = self.state.grid.homebase
            if home not in parent:
                raise AlgorithmStalled(f"homebase cut off from {target}")
            self.introduce()
            found = home
        sid = self._pop_idle(found)
        node = found
        while parent[node] is not None:
            node = parent[node]
            self.slide(sid, node)
        return sid

    def rest(self, sid: int) -> None:
        """Park a searcher where it stands; it may be drawn again later."""
        self.idle.setdefault(self.state.positions[sid], []).append(sid)

    def pin(self, node: Coord, sid: int) -> None:
        assert node not in self.pins, f"double pin at {node}"
        self.pins[node] = sid
        if self.on_pin is not None:
            self.on_pin(node)

    def release_if_safe(self, node: Coord) -> bool:
        """Free the guard on node once it no longer needs one."""
        sid = self.pins.get(node)
        if sid is None or self.state.needs_guard(node):
            return False
        del self.pins[node]
        self.rest(sid)
        if self.on_release is not None:
            self.on_release(node)
        return True

    def settle_arrival(self, sid: int, node: Coord) -> bool:
        """Pin the searcher on its node when that node needs a guard.

        Returns True when it was pinned, False when it went idle instead.
        """
        if self.state.needs_guard(node) and node not in self.pins:
            self.pin(node, sid)
            return True
        self.rest(sid)
        return False
