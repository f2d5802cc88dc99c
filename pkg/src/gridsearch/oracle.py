"""Exact minimum team size for monotone connected clearing.

The searcher positions never matter beyond which guard posts are covered,
so a game position collapses to its set of clean edges. Cleaning one more
edge from an access node inside the clean region costs a team size that
depends only on the guard posts before and after; the minimum team is the
minimax of that cost over all clearing orders, found by priority search.
"""

from __future__ import annotations

import heapq

from .errors import StateSpaceExceeded
from .geometry import Coord, Edge, PartialGrid, edge_between
from .state import StrategyTrace


def _boundary(incident: dict[Coord, tuple[Edge, ...]], clean: frozenset[Edge]) -> frozenset[Coord]:
    """Guard posts of a position: nodes with clean and contaminated edges."""
    out = []
    for p, edges in incident.items():
        has_clean = has_dirty = False
        for e in edges:
            if e in clean:
                has_clean = True
            else:
                has_dirty = True
        if has_clean and has_dirty:
            out.append(p)
    return frozenset(out)


def transition_cost(incident, clean: frozenset[Edge], access: Coord, e: Edge) -> int:
    """Searchers needed to clean e from `access` at position `clean`.

    Every guard post must stay covered throughout, and the access node
    needs a second body whenever it remains a guard post afterwards.
    """
    before = _boundary(incident, clean)
    after = _boundary(incident, clean | {e})
    base = len(before) if access in before else len(before) + 1
    return base + (1 if access in after else 0)


def mcs_exact(grid: PartialGrid, k_max: int | None = None,
              state_limit: int = 2_000_000) -> int | None:
    """Smallest team that can clear the grid monotonically and connectedly.

    Returns None when k_max is given and no team of that size suffices.
    Raises StateSpaceExceeded if the search visits too many positions.
    """
    all_edges = frozenset(grid.edges)
    if not all_edges:
        return 0
    home = grid.homebase
    incident: dict[Coord, tuple[Edge, ...]] = {
        p: tuple(edge_between(p, q) for q in nb)
        for p, nb in grid.adjacency.items()
    }
    start: frozenset[Edge] = frozenset()
    best: dict[frozenset[Edge], int] = {start: 1}
    heap: list[tuple[int, int, frozenset[Edge]]] = [(1, 0, start)]
    tiebreak = 0
    while heap:
        cost, _, clean = heapq.heappop(heap)
        if cost > best.get(clean, cost):
            continue
        if clean == all_edges:
            return cost
        before = _boundary(incident, clean)
        b = len(before)
        region = sorted({p for e in clean for p in e}) if clean else [home]
        for u in region:
            base = b if u in before else b + 1
            for e in incident[u]:
                if e in clean:
                    continue
                # after the cleaning, u is a guard post iff another of its
                # edges is still contaminated
                still_post = any(f not in clean and f != e for f in incident[u])
                nk = max(cost, base + (1 if still_post else 0))
                if k_max is not None and nk > k_max:
                    continue
                nxt = clean | {e}
                if nk < best.get(nxt, nk + 1):
                    best[nxt] = nk
                    tiebreak += 1
                    heapq.heappush(heap, (nk, tiebreak, nxt))
        if len(best) > state_limit:
            raise StateSpaceExceeded(f"more than {state_limit} positions explored")
    return None


def mcs_lower_check(grid: PartialGrid, trace: StrategyTrace,
                    state_limit: int = 2_000_000) -> bool:
    """True iff a complete trace used at least the exact optimum team.

    A false answer means the trace claims an impossibly small team; callers
    treat that as a bug in whichever component produced it.
    """
    return mcs_exact(grid, k_max=trace.k, state_limit=state_limit) is not None
