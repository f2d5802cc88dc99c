"""Layer calls measured against the pure-geometry expansion oracle."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gridsearch.crew import Crew
from gridsearch.errors import BudgetExceeded
from gridsearch.geometry import Frontier, expansion, make_grid, ring_index, unit_neighbors
from gridsearch.state import SearchState, StrategyTrace
from gridsearch.strip import StripTask, clean_strip


def rect_grid(w, h, home=(0, 0)):
    nodes = [(x, y) for x in range(w) for y in range(h)]
    edges = []
    for x, y in nodes:
        if x + 1 < w:
            edges.append(((x, y), (x + 1, y)))
        if y + 1 < h:
            edges.append(((x, y), (x, y + 1)))
    return make_grid(nodes, edges, home)


def blob_grid(seed, steps=120):
    rng = random.Random(seed)
    cur = (0, 0)
    nodes = {cur}
    for _ in range(steps):
        cur = rng.choice(unit_neighbors(cur))
        nodes.add(cur)
    edges = [(p, q) for p in nodes for q in unit_neighbors(p) if q in nodes and p < q]
    return make_grid(sorted(nodes), edges, min(nodes))


def seed_frontier(grid, length):
    """Clean the homebase-anchored frontier path and post its guards."""
    state = SearchState(grid)
    crew = Crew(state, StrategyTrace())
    home = grid.homebase
    sid = crew.draw_at(home)
    if state.contam_deg.get(home, 0):
        crew.pin(home, sid)
    else:
        crew.rest(sid)
    walked = [home]
    cur = home
    for j in range(1, length + 1):
        nxt = (home[0] + j, home[1])
        if nxt not in crew.view.ports(cur):
            break
        sid = crew.draw_at(cur)
        crew.slide(sid, nxt)
        crew.settle_arrival(sid, nxt)
        for p in (cur, nxt):
            crew.release_if_safe(p)
        walked.append(nxt)
        cur = nxt
    return state, crew, tuple(walked)


class TestCrew:
    def test_budget_is_enforced_at_introduction(self):
        state = SearchState(rect_grid(3, 3))
        crew = Crew(state, StrategyTrace(), budget=2)
        crew.introduce()
        crew.introduce()
        with pytest.raises(BudgetExceeded):
            crew.introduce()

    def test_draw_reuses_the_resting_searcher(self):
        state = SearchState(rect_grid(4, 1))
        crew = Crew(state, StrategyTrace())
        sid = crew.draw_at((0, 0))
        crew.slide(sid, (1, 0))
        crew.rest(sid)
        again = crew.draw_at((1, 0))
        assert again == sid
        assert crew.total == 1

    def test_draw_walks_the_clean_path(self):
        state = SearchState(rect_grid(5, 1))
        crew = Crew(state, StrategyTrace())
        sid = crew.draw_at((0, 0))
        for x in (1, 2, 3, 4):
            crew.slide(sid, (x, 0))
        crew.rest(sid)
        before = len(crew.trace.moves)
        assert crew.draw_at((1, 0)) == sid
        # resting at (4,0) on an all-clean path, three slides back to (1,0)
        assert len(crew.trace.moves) - before == 3

    def test_release_refuses_while_contamination_touches(self):
        state = SearchState(rect_grid(3, 1))
        crew = Crew(state, StrategyTrace())
        sid = crew.draw_at((0, 0))
        crew.slide(sid, (1, 0))
        crew.pin((1, 0), sid)
        assert not crew.release_if_safe((1, 0))
        other = crew.draw_at((1, 0))
        crew.slide(other, (2, 0))
        crew.rest(other)
        assert crew.release_if_safe((1, 0))
        assert not crew.pins


class TestSingleLayer:
    def test_first_layer_visits_match_expansion(self):
        grid = rect_grid(13, 13, home=(0, 6))
        state, crew, seeds = seed_frontier(grid, 4)
        frontier = Frontier((0, 6), True, 4)
        layers = expansion(state.adj, frontier, set(seeds), 1)
        before = set(state.visited)
        rep = clean_strip(crew, StripTask(frontier, 1, tuple(sorted(crew.pins))))
        assert set(state.visited) - before == layers[1]
        assert rep.first_visits == len(layers[1])
        assert rep.peak_cleaners <= 6 * 1 + 4

    def test_guards_end_on_the_outer_ring_only(self):
        grid = rect_grid(13, 13, home=(0, 6))
        state, crew, seeds = seed_frontier(grid, 4)
        frontier = Frontier((0, 6), True, 4)
        clean_strip(crew, StripTask(frontier, 1, tuple(sorted(crew.pins))))
        assert crew.pins
        assert all(ring_index(frontier, p) == 1 for p in crew.pins)
        assert all(state.needs_guard(p) for p in crew.pins)

    def test_all_reached_layer_edges_are_clean(self):
        grid = rect_grid(13, 13, home=(0, 6))
        state, crew, seeds = seed_frontier(grid, 4)
        frontier = Frontier((0, 6), True, 4)
        layers = expansion(state.adj, frontier, set(seeds), 1)
        clean_strip(crew, StripTask(frontier, 1, tuple(sorted(crew.pins))))
        region = layers[0] | layers[1]
        for u in region:
            for v in state.adj[u]:
                if v in region and ring_index(frontier, v) <= 1:
                    assert state.is_edge_clean(u, v), (u, v)


class TestStackedLayers:
    @pytest.mark.parametrize("grid,length", [
        (rect_grid(13, 13, home=(0, 6)), 4),
        (rect_grid(9, 5, home=(0, 2)), 3),
    ])
    def test_each_layer_matches_the_expansion_oracle(self, grid, length):
        state, crew, seeds = seed_frontier(grid, length)
        frontier = Frontier(grid.homebase, True, length)
        layers = expansion(state.adj, frontier, set(seeds), 4)
        for depth in (1, 2, 3, 4):
            before = set(state.visited)
            rep = clean_strip(
                crew, StripTask(frontier, depth, tuple(sorted(crew.pins)))
            )
            assert set(state.visited) - before == layers[depth], depth
            assert rep.peak_cleaners <= 6 * depth + 4

    def test_vertical_arm_is_reached_layer_by_layer(self):
        # a path heading straight up from the homebase: layer d adds (0, d)
        nodes = [(0, y) for y in range(4)]
        edges = [((0, y), (0, y + 1)) for y in range(3)]
        grid = make_grid(nodes, edges, (0, 0))
        state, crew, seeds = seed_frontier(grid, 2)
        assert seeds == ((0, 0),)
        frontier = Frontier((0, 0), True, 2)
        for depth in (1, 2, 3):
            rep = clean_strip(crew, StripTask(frontier, depth, tuple(sorted(crew.pins))))
            assert rep.cleared_edges == 1
            assert state.is_edge_clean((0, depth - 1), (0, depth))

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 10_000))
    def test_blob_layers_match_expansion(self, seed):
        grid = blob_grid(seed)
        state, crew, seeds = seed_frontier(grid, 3)
        frontier = Frontier(grid.homebase, True, 3)
        layers = expansion(state.adj, frontier, set(seeds), 3)
        for depth in (1, 2, 3):
            if not crew.pins:
                break
            before = set(state.visited)
            rep = clean_strip(
                crew, StripTask(frontier, depth, tuple(sorted(crew.pins)))
            )
            assert set(state.visited) - before == layers[depth], (seed, depth)
            assert rep.peak_cleaners <= 6 * depth + 4

    def test_repeat_runs_are_identical(self):
        def one():
            grid = blob_grid(42)
            state, crew, _ = seed_frontier(grid, 3)
            frontier = Frontier(grid.homebase, True, 3)
            for depth in (1, 2):
                clean_strip(crew, StripTask(frontier, depth, tuple(sorted(crew.pins))))
            return [(m.searcher, m.src, m.dst) for m in crew.trace.moves]

        assert one() == one()
