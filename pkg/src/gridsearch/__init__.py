"""Connected monotone clean-up of partial grids by sliding searcher teams."""

from .adversary import AdaptiveAdversary, GameResult, StairTree, mirrored_grid, run_adversary_game
from .engine import (
    FloodResult,
    LemmaReport,
    RunResult,
    SweepEngine,
    UnknownSizeResult,
    greedy_flood,
    grid_searching,
    mod_grid_searching,
)
from .errors import (
    AlgorithmStalled,
    BudgetExceeded,
    EmptyComponent,
    GridFormatError,
    GridSearchError,
    IllegalMove,
    NoLatticeNodeNearOrigin,
    OriginOutside,
    StateSpaceExceeded,
)
from .fileio import read_grid, read_trace, write_grid, write_trace
from .generate import fixture_grids, random_grid, random_partial_grid
from .geometry import Frontier, PartialGrid, ceil_sqrt, make_grid, ring_index
from .oracle import mcs_exact, mcs_lower_check
from .polygon import PolygonSpec, covers, fixture_specs, rasterize, read_polygon, write_polygon
from .state import Move, SearchState, StrategyTrace, verify_trace

__version__ = "0.1.0"

__all__ = [
    "AdaptiveAdversary",
    "AlgorithmStalled",
    "BudgetExceeded",
    "EmptyComponent",
    "FloodResult",
    "Frontier",
    "GameResult",
    "GridFormatError",
    "GridSearchError",
    "IllegalMove",
    "LemmaReport",
    "Move",
    "NoLatticeNodeNearOrigin",
    "OriginOutside",
    "PartialGrid",
    "PolygonSpec",
    "RunResult",
    "SearchState",
    "StairTree",
    "StateSpaceExceeded",
    "StrategyTrace",
    "SweepEngine",
    "UnknownSizeResult",
    "ceil_sqrt",
    "covers",
    "fixture_grids",
    "fixture_specs",
    "greedy_flood",
    "grid_searching",
    "make_grid",
    "mcs_exact",
    "mcs_lower_check",
    "mirrored_grid",
    "mod_grid_searching",
    "random_grid",
    "random_partial_grid",
    "rasterize",
    "read_grid",
    "read_polygon",
    "read_trace",
    "ring_index",
    "run_adversary_game",
    "verify_trace",
    "write_grid",
    "write_polygon",
    "write_trace",
]
