"""Exception types shared across the package."""

from __future__ import annotations


class GridSearchError(Exception):
    """Base class for all errors raised by this package."""


class GridFormatError(GridSearchError):
    """A grid/trace/polygon file is malformed or self-inconsistent."""


class NonUnitEdge(GridSearchError):
    """An edge joins nodes that are not at distance 1 on the lattice."""


class DanglingEdge(GridSearchError):
    """An edge endpoint is not listed as a node."""


class Disconnected(GridSearchError):
    """The grid graph is not connected."""


class HomebaseMissing(GridSearchError):
    """The designated start node is not a node of the grid."""


class IllegalMove(GridSearchError):
    """A slide violates the game rules (no searcher at source, non-edge, ...)."""


class NoCleanPath(GridSearchError):
    """No path through the cleaned subgraph connects the requested nodes."""


class BudgetExceeded(GridSearchError):
    """A strategy needed more searchers than its stated budget."""


class AlgorithmStalled(GridSearchError):
    """Internal progress invariant failed: a step cleared nothing."""


class StateSpaceExceeded(GridSearchError):
    """The exact solver hit its configured state-count ceiling."""


class OriginOutside(GridSearchError):
    """The requested origin point is not strictly inside the polygonal region."""


class NoLatticeNodeNearOrigin(GridSearchError):
    """No lattice node strictly inside the region lies within one pitch of the origin."""


class EmptyComponent(GridSearchError):
    """The origin's connected component is unusable (isolated node, no edges)."""


class FogViolation(GridSearchError):
    """A strategy inspected a node it has not yet visited."""
