"""Command line front end.

Exit codes: 0 on success, 1 when a check comes back negative (failed
verification, uncovered region, busted cap), 2 on malformed input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .adversary import StairTree, mirrored_grid, run_adversary_game
from .engine import grid_searching, mod_grid_searching
from .errors import GridFormatError, GridSearchError, StateSpaceExceeded
from .fileio import read_grid, read_trace, write_grid, write_trace
from .generate import fixture_grids, random_grid, random_partial_grid
from .geometry import ceil_sqrt
from .oracle import mcs_exact
from .polygon import covers, rasterize, read_polygon
from .report import RUNS_COLUMNS, STRIP_COLUMNS, render_figures, write_csv, write_metrics
from .state import verify_trace


def _emit_metrics(args, metrics: dict) -> None:
    if getattr(args, "metrics", None):
        write_metrics(args.metrics, metrics)


def cmd_gen_random(args) -> int:
    if (args.width is None) != (args.height is None):
        raise GridFormatError("--width and --height go together")
    if args.width is not None:
        grid = random_grid(args.seed, args.width, args.height, args.edge_keep_prob)
    else:
        grid = random_partial_grid(args.seed, args.max_side)
    write_grid(grid, args.output)
    print(f"wrote {args.output}: {len(grid.nodes)} nodes, {len(grid.edges)} edges")
    return 0


def cmd_gen_adversary(args) -> int:
    if args.bends:
        bends = [int(b) for b in args.bends.split(",")]
        tree = StairTree(bends)
        sigma = tree.sigma()
    else:
        game = run_adversary_game(args.depth, args.algorithm)
        sigma = game.sigma
        tree = StairTree.from_sigma(sigma)
    grid = mirrored_grid(tree) if args.mirrored else tree.to_grid()
    write_grid(grid, args.output)
    print(
        f"wrote {args.output}: depth {tree.depth}, {len(grid.nodes)} nodes, "
        f"{tree.leaf_count()} leaves in the unmirrored tree"
    )
    _emit_metrics(
        args,
        {
            "kind": "stair_tree",
            "depth": tree.depth,
            "mirrored": bool(args.mirrored),
            "n_nodes": len(grid.nodes),
            "n_edges": len(grid.edges),
            "leaves": tree.leaf_count(),
            "sigma": [list(p) for p in sigma],
        },
    )
    return 0


def cmd_from_polygon(args) -> int:
    spec = read_polygon(args.polygon)
    raster = rasterize(spec)
    write_grid(raster.grid, args.output)
    print(
        f"wrote {args.output}: {len(raster.grid.nodes)} nodes, "
        f"{len(raster.grid.edges)} edges, anchor {raster.anchor}, pitch {raster.pitch}"
    )
    if raster.discarded:
        print(
            f"warning: {len(raster.discarded)} unreachable piece(s) discarded, "
            f"sizes {list(raster.discarded)}"
        )
    metrics = {
        "kind": "raster",
        "n_nodes": len(raster.grid.nodes),
        "n_edges": len(raster.grid.edges),
        "anchor_x": raster.anchor[0],
        "anchor_y": raster.anchor[1],
        "pitch": raster.pitch,
        "discarded_pieces": list(raster.discarded),
    }
    rc = 0
    if args.check_cover:
        cov = covers(spec, raster, args.density)
        metrics.update(
            {
                "covered": cov.covered,
                "cover_samples": cov.samples,
                "worst_distance": cov.worst_distance,
            }
        )
        print(
            f"coverage: {'ok' if cov.covered else 'FAILED'} over {cov.samples} samples, "
            f"worst distance {cov.worst_distance:.4f} at {cov.worst_point}"
        )
        if not cov.covered:
            rc = 1
    _emit_metrics(args, metrics)
    return rc


def _run_and_verify(grid, budget=None, side=None):
    result = grid_searching(grid, budget=budget, side=side)
    report = verify_trace(grid, result.trace)
    return result, report


def cmd_run(args) -> int:
    grid = read_grid(args.grid)
    result, report = _run_and_verify(grid, args.budget, args.side)
    if args.output:
        write_trace(result.trace, args.output)
    metrics = result.metrics()
    metrics.update(
        {
            "monotone": report.monotone,
            "connected": report.connected,
            "complete": report.complete,
        }
    )
    _emit_metrics(args, metrics)
    bound = 46 * result.side + 4
    print(
        f"cleaned {result.n_edges} edges with {result.k_peak} searchers "
        f"(bound {bound}), {len(result.trace.moves)} moves, "
        f"{result.steps} layer calls, {result.phases} upgrades"
    )
    print(
        f"verified: monotone={report.monotone} connected={report.connected} "
        f"complete={report.complete}; lemma suite "
        f"{'pass' if result.lemmas.passed else 'FAIL'}"
    )
    return 0 if report.ok and result.lemmas.passed else 1


def cmd_run_unknown(args) -> int:
    grid = read_grid(args.grid)
    res = mod_grid_searching(grid, c=args.c)
    if args.output and res.final is not None:
        write_trace(res.final.trace, args.output)
    report = verify_trace(grid, res.final.trace)
    metrics = res.metrics()
    metrics["complete"] = report.complete
    _emit_metrics(args, metrics)
    for rec in res.rounds:
        print(
            f"round {rec.round_index}: guessed {rec.guess} nodes, "
            f"budget {rec.budget}, {rec.outcome}, {rec.searchers_used} searchers"
        )
    print(f"total searchers across rounds: {res.total_searchers}; verified complete={report.complete}")
    return 0 if report.ok else 1


def cmd_attack(args) -> int:
    game = run_adversary_game(args.depth, args.algorithm)
    report = verify_trace(game.final_grid, game.trace)
    if args.output:
        write_trace(game.trace, args.output)
    if args.grid_out:
        write_grid(game.final_grid, args.grid_out)
    metrics = game.metrics()
    metrics["replay_ok"] = report.ok
    _emit_metrics(args, metrics)
    print(
        f"{args.algorithm} vs adaptive tree of depth {game.depth}: peak {game.peak} "
        f"searchers, floor {(game.depth + 1) / 2}, replay ok={report.ok}"
    )
    return 0 if report.ok and game.lower_bound_ok else 1


def cmd_verify(args) -> int:
    grid = read_grid(args.grid)
    trace = read_trace(args.trace)
    report = verify_trace(grid, trace)
    _emit_metrics(
        args,
        {
            "kind": "verify",
            "k": report.k,
            "moves": report.n_moves,
            "monotone": report.monotone,
            "connected": report.connected,
            "complete": report.complete,
            "violations": len(report.violations),
        },
    )
    print(
        f"monotone={report.monotone} connected={report.connected} complete={report.complete}"
    )
    for idx, text in report.violations[:20]:
        print(f"  move {idx}: {text}")
    return 0 if report.ok else 1


def cmd_oracle(args) -> int:
    grid = read_grid(args.grid)
    try:
        value = mcs_exact(grid, k_max=args.k_max, state_limit=args.state_limit)
    except StateSpaceExceeded as e:
        print(f"gave up: {e}", file=sys.stderr)
        return 1
    _emit_metrics(
        args,
        {
            "kind": "oracle",
            "n_nodes": len(grid.nodes),
            "n_edges": len(grid.edges),
            "oracle_mcs": value,
            "k_max": args.k_max,
        },
    )
    if value is None:
        print("infeasible")
        return 1
    print(f"minimum searchers: {value}")
    return 0


def cmd_stats(args) -> int:
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    runs: list[dict] = []
    strips: list[dict] = []

    def add_sweep(label: str, grid) -> None:
        result, report = _run_and_verify(grid)
        if not report.ok:
            raise GridSearchError(f"{label}: trace failed verification")
        row = {"label": label, **result.metrics()}
        runs.append(row)
        for srow in result.strip_rows:
            strips.append({"label": label, **srow})
        print(
            f"{label}: n={result.n_nodes} k={result.k_peak} "
            f"bound={46 * result.side + 4} lemmas={'pass' if result.lemmas.passed else 'FAIL'}"
        )

    for name, grid in fixture_grids().items():
        add_sweep(f"fixture:{name}", grid)
    for seed in range(args.seeds):
        add_sweep(f"seed:{seed}", random_partial_grid(seed, args.max_side))

    for name in ("spiral", "dense"):
        grid = fixture_grids()[name]
        res = mod_grid_searching(grid)
        runs.append({"label": f"doubling:{name}", **res.metrics()})
        print(f"doubling:{name}: rounds={len(res.rounds)} total={res.total_searchers}")

    for depth in (5, 9, 19):
        for algo in ("sweep", "flood"):
            game = run_adversary_game(depth, algo)
            row = {"label": f"game:l{depth}:{algo}", **game.metrics()}
            runs.append(row)
            print(f"game l={depth} {algo}: peak={game.peak}")

    for depth in (3, 4):
        game = run_adversary_game(depth, "sweep")
        exact = mcs_exact(game.final_grid)
        runs.append(
            {
                "label": f"ratio:l{depth}",
                "kind": "ratio",
                "l": depth,
                "algorithm": "sweep",
                "peak": game.peak,
                "oracle_mcs": exact,
                "ratio": game.peak / exact,
                "n_nodes": len(game.final_grid.nodes),
                "n_edges": len(game.final_grid.edges),
            }
        )
        print(f"ratio l={depth}: peak={game.peak} exact={exact}")

    write_csv(outdir / "runs.csv", RUNS_COLUMNS, runs)
    write_csv(outdir / "strips.csv", STRIP_COLUMNS, strips)
    print(f"wrote {outdir / 'runs.csv'} and {outdir / 'strips.csv'}")
    if args.plots:
        for p in render_figures(args.plots, runs, strips):
            print(f"wrote {p}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gridsearch",
        description="Connected monotone clean-up of partial grids by searcher teams.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-random", help="write a seeded random partial grid")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--max-side", type=int, default=60,
                   help="size cap when dimensions are drawn from the seed")
    p.add_argument("--width", type=int, help="fixed lattice width (with --height)")
    p.add_argument("--height", type=int, help="fixed lattice height (with --width)")
    p.add_argument("--edge-keep-prob", type=float, default=0.7,
                   help="per-edge keep probability in fixed-size mode")
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_gen_random)

    p = sub.add_parser("gen-adversary", help="write a stair tree grid")
    p.add_argument("--depth", type=int, default=8)
    p.add_argument("--bends", help="comma separated bend columns; skips the adaptive game")
    p.add_argument("--algorithm", choices=("sweep", "flood"), default="sweep")
    p.add_argument("--mirrored", action="store_true", help="union with the half-turn image")
    p.add_argument("--metrics")
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_gen_adversary)

    p = sub.add_parser("from-polygon", help="rasterize a polygon file to a grid")
    p.add_argument("polygon")
    p.add_argument("--check-cover", action="store_true")
    p.add_argument("--density", type=int, default=4)
    p.add_argument("--metrics")
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_from_polygon)

    p = sub.add_parser("run", help="clean a grid with the checkpoint sweep")
    p.add_argument("grid")
    p.add_argument("--side", type=int)
    p.add_argument("--budget", type=int)
    p.add_argument("--metrics")
    p.add_argument("--output")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("run-unknown", help="clean a grid without knowing its size")
    p.add_argument("grid")
    p.add_argument("--c", type=int, default=46, help="budget multiplier per round")
    p.add_argument("--metrics")
    p.add_argument("--output")
    p.set_defaults(func=cmd_run_unknown)

    p = sub.add_parser("attack", help="play a strategy against the adaptive tree")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--algorithm", choices=("sweep", "flood"), default="sweep")
    p.add_argument("--grid-out")
    p.add_argument("--metrics")
    p.add_argument("--output")
    p.set_defaults(func=cmd_attack)

    p = sub.add_parser("verify", help="replay a trace against a grid")
    p.add_argument("grid")
    p.add_argument("trace")
    p.add_argument("--metrics")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="exact minimum searcher count by state search")
    p.add_argument("grid")
    p.add_argument("--k-max", type=int)
    p.add_argument("--state-limit", type=int, default=2_000_000)
    p.add_argument("--metrics")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("stats", help="run the suite and write CSV summaries")
    p.add_argument("--out", required=True)
    p.add_argument("--seeds", type=int, default=20)
    p.add_argument("--max-side", type=int, default=30)
    p.add_argument("--plots", help="directory for rendered figures")
    p.set_defaults(func=cmd_stats)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except GridFormatError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except GridSearchError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
