"""Polygon rasterization, origin anchoring, and disc coverage."""

import pytest

from gridsearch.errors import (
    EmptyComponent,
    GridFormatError,
    NoLatticeNodeNearOrigin,
    OriginOutside,
)
from gridsearch.polygon import (
    PolygonSpec,
    covers,
    fixture_specs,
    polygon_from_text,
    polygon_to_text,
    rasterize,
    validate_polygon,
)


class TestFixtures:
    def test_square_is_a_four_by_four_grid(self):
        rg = rasterize(fixture_specs()["square"])
        assert len(rg.grid.nodes) == 16
        assert len(rg.grid.edges) == 24
        assert rg.grid.homebase == (0, 0)
        assert rg.anchor == (0.0, 0.0)

    def test_holed_square_loses_one_node(self):
        rg = rasterize(fixture_specs()["holed_square"])
        assert len(rg.grid.nodes) == 48
        assert len(rg.grid.edges) == 80
        assert (3, 3) not in rg.grid.nodes

    def test_sliver_has_no_lattice_node(self):
        with pytest.raises(NoLatticeNodeNearOrigin):
            rasterize(fixture_specs()["sliver"])

    def test_alcove_rasterizes_but_is_not_covered(self):
        spec = fixture_specs()["alcove"]
        rg = rasterize(spec)
        assert len(rg.grid.nodes) == 16
        report = covers(spec, rg)
        assert not report.covered
        assert report.worst_distance > spec.pitch

    def test_square_and_holed_square_are_covered(self):
        for name in ("square", "holed_square"):
            spec = fixture_specs()[name]
            report = covers(spec, rasterize(spec))
            assert report.covered, name


class TestOriginRules:
    def test_origin_outside_is_rejected(self):
        spec = PolygonSpec(1.0, (50.0, 50.0), fixture_specs()["square"].outer)
        with pytest.raises(OriginOutside):
            rasterize(spec)

    def test_origin_in_a_hole_is_rejected(self):
        holed = fixture_specs()["holed_square"]
        spec = PolygonSpec(1.0, (3.0, 3.0), holed.outer, holed.holes)
        with pytest.raises(OriginOutside):
            rasterize(spec)

    def test_single_reachable_node_is_an_empty_component(self):
        diamond = ((0.8, 0.0), (0.0, 0.8), (-0.8, 0.0), (0.0, -0.8))
        spec = PolygonSpec(1.0, (0.1, 0.0), diamond)
        with pytest.raises(EmptyComponent):
            rasterize(spec)

    def test_unreachable_pieces_are_reported(self):
        # two 2x2 blocks joined by a corridor too thin to carry any edge
        outer = (
            (-0.25, -0.25),
            (1.25, -0.25),
            (1.25, 0.4),
            (3.75, 0.4),
            (3.75, -0.25),
            (5.25, -0.25),
            (5.25, 1.25),
            (3.75, 1.25),
            (3.75, 0.6),
            (1.25, 0.6),
            (1.25, 1.25),
            (-0.25, 1.25),
        )
        rg = rasterize(PolygonSpec(1.0, (0.1, 0.1), outer))
        assert len(rg.grid.nodes) == 4
        assert rg.discarded == (4,)

    def test_grid_is_anchored_at_the_node_nearest_the_origin(self):
        # same square shifted far from the lattice origin
        outer = ((9.75, 9.75), (13.25, 9.75), (13.25, 13.25), (9.75, 13.25))
        spec = PolygonSpec(1.0, (10.1, 10.2), outer)
        rg = rasterize(spec)
        assert rg.anchor == (10.0, 10.0)
        assert rg.grid.homebase == (0, 0)
        assert len(rg.grid.nodes) == 16

    def test_coarse_pitch_can_miss_the_origin(self):
        # one lattice node at the near end of the bar, origin at the far end
        outer = (
            (-0.6, -0.6),
            (0.6, -0.6),
            (0.6, 0.5),
            (5.5, 0.5),
            (5.5, 1.5),
            (-0.6, 1.5),
        )
        spec = PolygonSpec(2.0, (5.0, 1.0), outer)
        with pytest.raises(NoLatticeNodeNearOrigin):
            rasterize(spec)


class TestCoverage:
    def test_finer_sampling_never_passes_a_coarser_failure(self):
        # sample sets nest when densities divide, so verdicts can only
        # get stricter with density
        for name in ("square", "holed_square", "alcove"):
            spec = fixture_specs()[name]
            rg = rasterize(spec)
            verdicts = [covers(spec, rg, d).covered for d in (1, 2, 4, 8)]
            for coarse, fine in zip(verdicts, verdicts[1:]):
                assert coarse or not fine, (name, verdicts)

    def test_ring_vertices_are_always_sampled(self):
        spec = fixture_specs()["alcove"]
        rg = rasterize(spec)
        report = covers(spec, rg, density=1)
        assert report.worst_point == (1.7, 5.3)

    def test_density_must_be_positive(self):
        spec = fixture_specs()["square"]
        rg = rasterize(spec)
        with pytest.raises(ValueError):
            covers(spec, rg, density=0)


class TestTextForm:
    def test_round_trip(self):
        for spec in fixture_specs().values():
            assert polygon_from_text(polygon_to_text(spec)) == spec

    @pytest.mark.parametrize(
        "text",
        [
            "not-a-header\nr 1.0\n",
            "gridsearch-polygon v1\nr 1.0\norigin 0 0\n",
            "gridsearch-polygon v1\nr 1.0\norigin 0 0\nouter 0 0 1 0\n",
            "gridsearch-polygon v1\norigin 0 0\nouter 0 0 1 0 1 1\n",
            "gridsearch-polygon v1\nr 1.0\norigin 0 0\nouter 0 0 1 0 1 1\nwhat 3\n",
            "gridsearch-polygon v1\nr 1.0\norigin 0 0\nouter 0 0 1 0 1 1\nouter 0 0 1 0 1 1\n",
        ],
    )
    def test_malformed_text_is_rejected(self, text):
        with pytest.raises(GridFormatError):
            polygon_from_text(text)

    def test_zero_pitch_is_rejected(self):
        spec = PolygonSpec(0.0, (0.0, 0.0), fixture_specs()["square"].outer)
        with pytest.raises(GridFormatError):
            validate_polygon(spec)

    def test_bowtie_is_rejected(self):
        spec = PolygonSpec(1.0, (0.1, 0.1), ((0.0, 0.0), (2.0, 2.0), (2.0, 0.0), (0.0, 2.0)))
        with pytest.raises(GridFormatError):
            validate_polygon(spec)
