"""Turn a polygon with holes into a searchable grid.

The lattice is the set of global multiples of the pitch; it is not anchored
at the query origin, so a thin region can fail to contain any lattice node
at all. A node is kept when it lies strictly inside the region; an edge is
kept when the segment between its endpoints never leaves the closed region.
The grid handed to the search is the connected component of the node
nearest the origin, re-indexed so that node becomes (0, 0).

Coverage asks the converse question: stand a disc of one pitch radius on
every grid node and check that the whole region is under some disc. The
check samples a sub-lattice of the region interior plus every ring vertex.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from shapely.geometry import LineString, Point, Polygon
from shapely.prepared import prep

from .errors import (
    EmptyComponent,
    GridFormatError,
    NoLatticeNodeNearOrigin,
    OriginOutside,
)
from .geometry import Coord, PartialGrid, make_grid

POLYGON_MAGIC = "gridsearch-polygon v1"

XY = tuple[float, float]


@dataclass(frozen=True)
class PolygonSpec:
    pitch: float
    origin: XY
    outer: tuple[XY, ...]
    holes: tuple[tuple[XY, ...], ...] = ()


def validate_polygon(spec: PolygonSpec) -> Polygon:
    if not spec.pitch > 0:
        raise GridFormatError(f"pitch must be positive, got {spec.pitch}")
    if len(spec.outer) < 3:
        raise GridFormatError("outer ring needs at least 3 vertices")
    poly = Polygon(spec.outer, [list(h) for h in spec.holes])
    if not poly.is_valid or poly.is_empty:
        raise GridFormatError("region is not a valid polygon")
    if not poly.contains(Point(*spec.origin)):
        raise OriginOutside(f"origin {spec.origin} is not strictly inside the region")
    return poly


@dataclass
class RasterGrid:
    grid: PartialGrid
    anchor: XY
    pitch: float
    discarded: tuple[int, ...] = ()  # node counts of unreachable pieces, largest first

    def world(self, p: Coord) -> XY:
        return (self.anchor[0] + p[0] * self.pitch, self.anchor[1] + p[1] * self.pitch)


def rasterize(spec: PolygonSpec) -> RasterGrid:
    poly = validate_polygon(spec)
    fast = prep(poly)
    r = spec.pitch
    minx, miny, maxx, maxy = poly.bounds
    i_lo, i_hi = math.ceil(minx / r - 1e-9), math.floor(maxx / r + 1e-9)
    j_lo, j_hi = math.ceil(miny / r - 1e-9), math.floor(maxy / r + 1e-9)

    kept = {
        (i, j)
        for i in range(i_lo, i_hi + 1)
        for j in range(j_lo, j_hi + 1)
        if fast.contains(Point(i * r, j * r))
    }

    ox, oy = spec.origin
    near = [
        (i, j)
        for (i, j) in kept
        if max(abs(i * r - ox), abs(j * r - oy)) < r
    ]
    if not near:
        raise NoLatticeNodeNearOrigin(
            f"no lattice node strictly inside within one pitch of {spec.origin}"
        )
    root = min(near, key=lambda p: ((p[0] * r - ox) ** 2 + (p[1] * r - oy) ** 2, p))

    def edge_ok(a: Coord, b: Coord) -> bool:
        return fast.contains(
            LineString([(a[0] * r, a[1] * r), (b[0] * r, b[1] * r)])
        )

    adj: dict[Coord, list[Coord]] = {}
    for (i, j) in kept:
        for q in ((i + 1, j), (i, j + 1)):
            if q in kept and edge_ok((i, j), q):
                adj.setdefault((i, j), []).append(q)
                adj.setdefault(q, []).append((i, j))

    component = {root}
    stack = [root]
    while stack:
        u = stack.pop()
        for v in adj.get(u, ()):
            if v not in component:
                component.add(v)
                stack.append(v)
    edges = [
        (u, v)
        for u in component
        for v in adj.get(u, ())
        if u < v
    ]
    if not edges:
        raise EmptyComponent(f"lattice node {root} has no edges inside the region")

    discarded: list[int] = []
    unseen = set(kept) - component
    while unseen:
        seed = unseen.pop()
        piece = {seed}
        stack = [seed]
        while stack:
            u = stack.pop()
            for v in adj.get(u, ()):
                if v in unseen:
                    unseen.discard(v)
                    piece.add(v)
                    stack.append(v)
        discarded.append(len(piece))

    rx, ry = root
    nodes = [(i - rx, j - ry) for (i, j) in component]
    shifted = [((a[0] - rx, a[1] - ry), (b[0] - rx, b[1] - ry)) for a, b in edges]
    return RasterGrid(
        grid=make_grid(nodes, shifted, (0, 0)),
        anchor=(rx * r, ry * r),
        pitch=r,
        discarded=tuple(sorted(discarded, reverse=True)),
    )


@dataclass
class CoverageReport:
    covered: bool
    samples: int
    worst_distance: float
    worst_point: XY


def covers(spec: PolygonSpec, raster: RasterGrid, density: int = 4) -> CoverageReport:
    """Check that pitch-radius discs on the grid nodes blanket the region."""
    if density < 1:
        raise ValueError("density must be at least 1")
    poly = validate_polygon(spec)
    fast = prep(poly)
    r = spec.pitch
    h = r / density
    minx, miny, maxx, maxy = poly.bounds
    pts: list[XY] = []
    for i in range(math.ceil(minx / h - 1e-9), math.floor(maxx / h + 1e-9) + 1):
        for j in range(math.ceil(miny / h - 1e-9), math.floor(maxy / h + 1e-9) + 1):
            if fast.contains(Point(i * h, j * h)):
                pts.append((i * h, j * h))
    for ring in (spec.outer, *spec.holes):
        pts.extend(ring)

    nodes = np.array([raster.world(p) for p in sorted(raster.grid.nodes)])
    samples = np.array(pts)
    d2 = ((samples[:, None, :] - nodes[None, :, :]) ** 2).sum(axis=2).min(axis=1)
    worst = int(np.argmax(d2))
    return CoverageReport(
        covered=bool(np.all(d2 <= r * r + 1e-9)),
        samples=len(pts),
        worst_distance=float(math.sqrt(d2[worst])),
        worst_point=(float(samples[worst][0]), float(samples[worst][1])),
    )


# round-trip text form


def polygon_to_text(spec: PolygonSpec) -> str:
    lines = [POLYGON_MAGIC, f"r {spec.pitch!r}", f"origin {spec.origin[0]!r} {spec.origin[1]!r}"]
    for name, ring in (("outer", spec.outer), *(("hole", h) for h in spec.holes)):
        lines.append(name + " " + " ".join(f"{x!r} {y!r}" for x, y in ring))
    return "\n".join(lines) + "\n"


def polygon_from_text(text: str) -> PolygonSpec:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or lines[0] != POLYGON_MAGIC:
        raise GridFormatError(f"expected header {POLYGON_MAGIC!r}")
    pitch = None
    origin = None
    outer = None
    holes: list[tuple[XY, ...]] = []

    def ring(parts: list[str]) -> tuple[XY, ...]:
        vals = [float(v) for v in parts]
        if len(vals) < 6 or len(vals) % 2:
            raise GridFormatError("ring needs an even number of coordinates, at least 3 points")
        return tuple(zip(vals[0::2], vals[1::2]))

    for ln in lines[1:]:
        head, *parts = ln.split()
        if head == "r" and len(parts) == 1:
            pitch = float(parts[0])
        elif head == "origin" and len(parts) == 2:
            origin = (float(parts[0]), float(parts[1]))
        elif head == "outer":
            if outer is not None:
                raise GridFormatError("duplicate outer ring")
            outer = ring(parts)
        elif head == "hole":
            holes.append(ring(parts))
        else:
            raise GridFormatError(f"unrecognized line {ln!r}")
    if pitch is None or origin is None or outer is None:
        raise GridFormatError("polygon needs r, origin, and outer lines")
    return PolygonSpec(pitch=pitch, origin=origin, outer=outer, holes=tuple(holes))


def read_polygon(path: str | Path) -> PolygonSpec:
    return polygon_from_text(Path(path).read_text())


def write_polygon(spec: PolygonSpec, path: str | Path) -> None:
    Path(path).write_text(polygon_to_text(spec))


def fixture_specs() -> dict[str, PolygonSpec]:
    pad_square = (
        (-0.25, -0.25),
        (3.25, -0.25),
        (3.25, 3.25),
        (-0.25, 3.25),
    )
    return {
        "square": PolygonSpec(1.0, (0.0, 0.0), pad_square),
        "holed_square": PolygonSpec(
            1.0,
            (0.0, 0.0),
            ((-0.25, -0.25), (6.25, -0.25), (6.25, 6.25), (-0.25, 6.25)),
            (((2.6, 2.6), (3.4, 2.6), (3.4, 3.4), (2.6, 3.4)),),
        ),
        "sliver": PolygonSpec(
            1.0,
            (0.5, 2.0),
            ((0.3, 0.3), (0.7, 0.3), (0.7, 4.0), (0.3, 4.0)),
        ),
        "alcove": PolygonSpec(
            1.0,
            (0.0, 0.0),
            (
                (-0.25, -0.25),
                (3.25, -0.25),
                (3.25, 3.25),
                (1.7, 3.25),
                (1.7, 5.3),
                (1.3, 5.3),
                (1.3, 3.25),
                (-0.25, 3.25),
            ),
        ),
    }
