"""Frozen geometry facts plus property checks for layers and growth."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gridsearch.errors import DanglingEdge, Disconnected, HomebaseMissing, NonUnitEdge
from gridsearch.geometry import (
    Frontier,
    PartialGrid,
    ceil_sqrt,
    edge_between,
    expansion,
    frontiers_on_rectangle,
    make_grid,
    rectangle_corners,
    rectangle_region_membership,
    ring_index,
    ring_nodes,
    unit_neighbors,
    validate_grid,
)


def walk_grid(seed: int, steps: int) -> PartialGrid:
    """Connected lattice piece from a random walk, all induced edges kept."""
    rng = random.Random(seed)
    nodes = {(0, 0)}
    cur = (0, 0)
    for _ in range(steps):
        cur = rng.choice(unit_neighbors(cur))
        nodes.add(cur)
    edges = {
        edge_between(p, q)
        for p in nodes
        for q in unit_neighbors(p)
        if q in nodes
    }
    return make_grid(nodes, edges, (0, 0))


small_walks = st.builds(walk_grid, st.integers(0, 10_000), st.integers(1, 40))


class TestBasics:
    def test_ceil_sqrt(self):
        assert [ceil_sqrt(n) for n in (0, 1, 2, 4, 5, 9, 10, 3600)] == [
            0, 1, 2, 2, 3, 3, 4, 60,
        ]

    def test_edge_between_orders_endpoints(self):
        assert edge_between((1, 0), (0, 0)) == ((0, 0), (1, 0))
        assert edge_between((0, 0), (0, 1)) == ((0, 0), (0, 1))

    def test_side_is_ceil_sqrt_of_node_count(self):
        g = walk_grid(3, 30)
        assert g.side == ceil_sqrt(g.n)


class TestValidation:
    def test_rejects_long_edge(self):
        with pytest.raises(NonUnitEdge):
            make_grid([(0, 0), (2, 0)], [((0, 0), (2, 0))], (0, 0))

    def test_rejects_dangling_edge(self):
        grid = PartialGrid(
            nodes=frozenset([(0, 0), (1, 0)]),
            edges=frozenset([((1, 0), (2, 0))]),
            homebase=(0, 0),
        )
        with pytest.raises(DanglingEdge):
            validate_grid(grid)

    def test_rejects_disconnected(self):
        with pytest.raises(Disconnected):
            make_grid([(0, 0), (1, 0), (5, 5), (5, 6)],
                      [((0, 0), (1, 0)), ((5, 5), (5, 6))], (0, 0))

    def test_rejects_missing_homebase(self):
        with pytest.raises(HomebaseMissing):
            make_grid([(0, 0), (1, 0)], [((0, 0), (1, 0))], (9, 9))


H9 = Frontier((0, 0), True, 9)


class TestLayers:
    """Layer shapes around a frontier: sizes, membership, adjacency."""

    def test_layer_zero_is_the_frontier(self):
        assert ring_nodes(H9, 0) == [(j, 0) for j in range(10)]

    def test_frozen_layer_sizes(self):
        # length s, depth i >= 1: 2s + 8i points
        assert len(ring_nodes(H9, 1)) == 26
        assert len(ring_nodes(H9, 9)) == 90
        v = Frontier((4, -2), False, 9)
        assert len(ring_nodes(v, 9)) == 90

    def test_layer_cap_at_depth_s(self):
        for s in (2, 3, 7):
            f = Frontier((0, 0), True, s)
            assert len(ring_nodes(f, s)) == 10 * s

    def test_rectangle_corners_frozen(self):
        assert rectangle_corners(Frontier((2, 3), True, 4), 2) == ((0, 1), (8, 5))
        assert rectangle_corners(Frontier((2, 3), False, 4), 2) == ((0, 1), (4, 9))

    @given(st.integers(-30, 30), st.integers(-30, 30), st.integers(0, 8),
           st.booleans(), st.integers(2, 9))
    def test_ring_index_matches_enumeration(self, ax, ay, depth, horizontal, s):
        f = Frontier((ax, ay), horizontal, s)
        for p in ring_nodes(f, depth):
            assert ring_index(f, p) == depth

    @given(st.integers(-20, 20), st.integers(-20, 20), st.booleans(),
           st.integers(2, 9), st.integers(-25, 25), st.integers(-25, 25))
    def test_neighbor_layers_differ_by_at_most_one(self, ax, ay, horizontal, s, px, py):
        f = Frontier((ax, ay), horizontal, s)
        i = ring_index(f, (px, py))
        for q in unit_neighbors((px, py)):
            assert abs(ring_index(f, q) - i) <= 1

    def test_union_of_layers_fills_the_rectangle(self):
        f = Frontier((1, -1), True, 3)
        for depth in range(4):
            (xlo, ylo), (xhi, yhi) = rectangle_corners(f, depth)
            rect = {(x, y) for x in range(xlo, xhi + 1) for y in range(ylo, yhi + 1)}
            union = set()
            for i in range(depth + 1):
                layer = set(ring_nodes(f, i))
                assert union.isdisjoint(layer)
                union |= layer
            assert union == rect
            assert all(rectangle_region_membership(f, depth, p) for p in rect)


class TestFrontiersOnRectangle:
    def test_horizontal_frozen_order(self):
        f = Frontier((0, 0), True, 3)
        got = [(fr.anchor, fr.horizontal) for fr in frontiers_on_rectangle(f)]
        assert got == [
            ((-3, -3), True), ((0, -3), True), ((3, -3), True),
            ((-3, 3), True), ((0, 3), True), ((3, 3), True),
            ((-3, -3), False), ((-3, 0), False),
            ((6, -3), False), ((6, 0), False),
        ]

    def test_vertical_frozen_order(self):
        f = Frontier((0, 0), False, 3)
        got = [(fr.anchor, fr.horizontal) for fr in frontiers_on_rectangle(f)]
        assert got == [
            ((-3, -3), True), ((0, -3), True),
            ((-3, 6), True), ((0, 6), True),
            ((-3, -3), False), ((-3, 0), False), ((-3, 3), False),
            ((3, -3), False), ((3, 0), False), ((3, 3), False),
        ]

    @given(st.integers(-12, 12), st.integers(-12, 12), st.booleans(), st.integers(2, 7))
    def test_ten_frontiers_tile_the_outermost_layer(self, ax, ay, horizontal, s):
        f = Frontier((ax, ay), horizontal, s)
        pieces = frontiers_on_rectangle(f)
        assert len(pieces) == 10
        covered = set()
        for piece in pieces:
            assert piece.length == s
            covered.update(piece.nodes())
        assert covered == set(ring_nodes(f, s))


def expansion_from_union(adjacency, frontier, seeds, count):
    """Alternative layer computation searching from the whole expanded set."""
    from collections import deque

    layers = [set(seeds)]
    expanded = set(seeds)
    for i in range(1, count + 1):
        seen = set(expanded)
        queue = deque(sorted(seen))
        while queue:
            u = queue.popleft()
            for v in adjacency.get(u, ()):
                if v not in seen and ring_index(frontier, v) <= i:
                    seen.add(v)
                    queue.append(v)
        layers.append(seen - expanded)
        expanded = seen
    return layers


class TestExpansion:
    def test_three_node_path_from_single_seed(self):
        g = make_grid(
            [(0, 0), (1, 0), (2, 0)],
            [((0, 0), (1, 0)), ((1, 0), (2, 0))],
            (0, 0),
        )
        f = Frontier((0, 0), True, g.side)
        layers = expansion(g.adjacency, f, {(0, 0)}, 1)
        assert layers[0] == {(0, 0)}
        assert layers[1] == {(1, 0), (2, 0)}

    def test_catchup_node_joins_a_later_layer(self):
        # (3, 1) sits on layer 1 but is only reachable around the end of the
        # frontier, so it is picked up once the search range opens wider
        nodes = [(0, 0), (1, 0), (2, 0), (0, 1), (0, 2), (1, 2), (2, 2), (3, 2), (3, 1)]
        edges = [((0, 0), (1, 0)), ((1, 0), (2, 0)), ((0, 0), (0, 1)),
                 ((0, 1), (0, 2)), ((0, 2), (1, 2)), ((1, 2), (2, 2)),
                 ((2, 2), (3, 2)), ((3, 2), (3, 1))]
        g = make_grid(nodes, edges, (0, 0))
        f = Frontier((0, 0), True, 2)
        layers = expansion(g.adjacency, f, {(0, 0), (1, 0), (2, 0)}, 2)
        assert ring_index(f, (3, 1)) == 1
        assert (3, 1) not in layers[1]
        assert (3, 1) in layers[2]

    @given(small_walks, st.integers(0, 6))
    @settings(max_examples=60, deadline=None)
    def test_layer_search_from_last_layer_equals_search_from_union(self, grid, count):
        f = Frontier(grid.homebase, True, grid.side)
        seeds = {grid.homebase}
        a = expansion(grid.adjacency, f, seeds, count)
        b = expansion_from_union(grid.adjacency, f, seeds, count)
        assert a == b

    @given(small_walks, st.integers(1, 6))
    @settings(max_examples=60, deadline=None)
    def test_layers_are_disjoint_and_confined(self, grid, count):
        f = Frontier(grid.homebase, True, grid.side)
        layers = expansion(grid.adjacency, f, {grid.homebase}, count)
        seen = set()
        for i, layer in enumerate(layers):
            assert seen.isdisjoint(layer)
            seen |= layer
            for p in layer:
                assert ring_index(f, p) <= i
