"""Checkpoint-driven sweep over a partial grid, plus baselines built on it.

The strategy maintains a set of checkpoints, each tied to a frontier segment
of length `side`. A checkpoint owns the guard posts its sweeps created; its
weight is the number of posts it owns. Per step the heaviest live checkpoint
clears the next concentric layer around its frontier. After `side` layers the
rectangle it swept is bounded by ten frontier-length segments; the checkpoint
retires and its guard line is handed to fresh checkpoints on those segments.

Every structural claim the analysis leans on is measured, not assumed: step
and phase records feed a lemma suite that reports violations verbatim.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from .crew import Crew
from .errors import AlgorithmStalled, BudgetExceeded
from .geometry import Coord, Frontier, PartialGrid, ceil_sqrt, frontiers_on_rectangle
from .state import SearchState, StrategyTrace
from .strip import StripTask, clean_strip


@dataclass
class Checkpoint:
    cid: int
    frontier: Frontier
    expansions: int
    seeds: tuple[Coord, ...]
    born_phase: int
    predecessors: tuple[int, ...] = ()
    successor: int | None = None
    merged_into: int | None = None
    retired: str | None = None


@dataclass
class StepRecord:
    step: int
    phase: int
    active: int
    weights: dict[int, int]
    guards_after: int


@dataclass
class PhaseRecord:
    phase: int
    start_step: int
    end_step: int
    upgraded: int
    end_weights: dict[int, int]
    predecessors: tuple[int, ...]
    explored_of_upgraded: int


@dataclass
class LemmaReport:
    """Measured interval and phase claims about checkpoint weights."""

    inactive_nongrowth: list[str] = field(default_factory=list)
    active_interval_nongrowth: list[str] = field(default_factory=list)
    phase_nongrowth: list[str] = field(default_factory=list)
    explored_credit: list[str] = field(default_factory=list)
    predecessor_cap: list[str] = field(default_factory=list)
    present_weight_cap: list[str] = field(default_factory=list)

    def checks(self) -> dict[str, list[str]]:
        return {
            "inactive_nongrowth": self.inactive_nongrowth,
            "active_interval_nongrowth": self.active_interval_nongrowth,
            "phase_nongrowth": self.phase_nongrowth,
            "explored_credit": self.explored_credit,
            "predecessor_cap": self.predecessor_cap,
            "present_weight_cap": self.present_weight_cap,
        }

    @property
    def passed(self) -> bool:
        return not any(self.checks().values())

    def violation_count(self) -> int:
        return sum(len(v) for v in self.checks().values())


@dataclass
class RunResult:
    trace: StrategyTrace
    side: int
    n_nodes: int
    n_edges: int
    k_peak: int
    guard_peak: int
    steps: int
    phases: int
    explorer_peak: int
    lemmas: LemmaReport
    strip_rows: list[dict]
    checkpoints: dict[int, Checkpoint]
    step_records: list[StepRecord]
    phase_records: list[PhaseRecord]

    def metrics(self) -> dict:
        bound = 46 * self.side + 4
        return {
            "kind": "sweep",
            "n_nodes": self.n_nodes,
            "n_edges": self.n_edges,
            "side": self.side,
            "peak_total": self.k_peak,
            "bound": bound,
            "within_bound": self.k_peak <= bound,
            "peak_guards": self.guard_peak,
            "guard_cap": 30 * self.side,
            "peak_cleaners": max((r["peak_cleaners"] for r in self.strip_rows), default=0),
            "peak_explorers": self.explorer_peak,
            "explorer_cap": 10 * self.side,
            "phases": self.phases,
            "steps": self.steps,
            "moves": len(self.trace.moves),
            "lemma_suite_pass": self.lemmas.passed,
        }


class SweepEngine:
    def __init__(self, state: SearchState, side: int, budget: int | None = None):
        if side < 1:
            raise ValueError("side must be at least 1")
        self.state = state
        self.side = side
        self.trace = StrategyTrace(k=0)
        self.crew = Crew(state, self.trace, budget)
        self.crew.on_pin = self._on_pin
        self.crew.on_release = self._on_release
        self.crew.on_cleaned = self._on_cleaned

        self.checkpoints: dict[int, Checkpoint] = {}
        self.live: set[int] = set()
        self.owner: dict[Coord, int] = {}
        self.weights: dict[int, int] = {}
        self.explored: dict[int, int] = {}
        self.next_cid = 0
        self.active_cid: int | None = None

        self.step = 0
        self.phase = 0
        self.phase_start_step = 0
        self.phase_start_live: set[int] = set()
        self.phase_start_weights: list[tuple[int, dict[int, int]]] = []
        self.step_records: list[StepRecord] = []
        self.phase_records: list[PhaseRecord] = []
        self.strip_rows: list[dict] = []
        self.guard_peak = 0

    # ownership bookkeeping, driven by crew callbacks

    def _on_pin(self, node: Coord) -> None:
        assert self.active_cid is not None
        assert node not in self.owner
        self.owner[node] = self.active_cid
        self.weights[self.active_cid] += 1
        self.guard_peak = max(self.guard_peak, len(self.crew.pins))

    def _on_release(self, node: Coord) -> None:
        cid = self.owner.pop(node)
        self.weights[cid] -= 1

    def _on_cleaned(self, edge) -> None:
        # A sweep that cleans up to a foreign guard post and leaves it
        # standing has made that post part of its own front; take it over.
        for p in edge:
            cur = self.owner.get(p)
            if cur is not None and cur != self.active_cid and self.state.needs_guard(p):
                self.weights[cur] -= 1
                self.weights[self.active_cid] += 1
                self.owner[p] = self.active_cid

    def _live_weights(self) -> dict[int, int]:
        return {cid: self.weights[cid] for cid in sorted(self.live)}

    def _new_checkpoint(self, frontier: Frontier, seeds: tuple[Coord, ...]) -> Checkpoint:
        cp = Checkpoint(self.next_cid, frontier, 0, seeds, self.phase)
        self.next_cid += 1
        self.checkpoints[cp.cid] = cp
        self.live.add(cp.cid)
        self.weights.setdefault(cp.cid, 0)
        self.explored.setdefault(cp.cid, 0)
        return cp

    # opening: clean a frontier-length path out of the homebase

    def _initialize(self) -> None:
        if self.state.is_clean():
            return
        home = self.state.grid.homebase
        c0 = self._new_checkpoint(Frontier(home, True, self.side), (home,))
        self.active_cid = c0.cid

        sid = self.crew.draw_at(home)
        if self.state.contam_deg.get(home, 0):
            self.crew.pin(home, sid)
        else:
            self.crew.rest(sid)

        walked = [home]
        cur = home
        for j in range(1, self.side + 1):
            nxt = (home[0] + j, home[1])
            if nxt not in self.crew.view.ports(cur) or self.state.is_edge_clean(cur, nxt):
                break
            sid = self.crew.draw_at(cur)
            rep = self.crew.slide(sid, nxt)
            self.explored[c0.cid] += rep.first_visit
            self.crew.settle_arrival(sid, nxt)
            for p in (cur, nxt):
                self.crew.release_if_safe(p)
            walked.append(nxt)
            cur = nxt
        c0.seeds = tuple(walked)
        self.phase_start_live = set(self.live)
        self.phase_start_weights.append((self.phase, self._live_weights()))

    def _select_active(self) -> Checkpoint:
        for cid in sorted(self.live):
            if self.weights[cid] == 0:
                self.live.discard(cid)
                self.checkpoints[cid].retired = "emptied"
        if not self.live:
            raise AlgorithmStalled("contamination left but no checkpoint owns a guard")
        cid = min(self.live, key=lambda c: (-self.weights[c], c))
        return self.checkpoints[cid]

    def _clean_expansion(self, active: Checkpoint) -> None:
        depth = active.expansions + 1
        anchors = tuple(sorted(p for p, c in self.owner.items() if c == active.cid))
        assert anchors, f"checkpoint {active.cid} selected with no guard posts"
        snapshot = self._live_weights()
        self.trace.note(f"step {self.step}: checkpoint {active.cid} clears layer {depth}")
        rep = clean_strip(self.crew, StripTask(active.frontier, depth, anchors))
        if rep.cleared_edges == 0:
            raise AlgorithmStalled(f"layer {depth} of checkpoint {active.cid} cleared nothing")
        active.expansions = depth
        self.explored[active.cid] += rep.first_visits
        fr = active.frontier
        self.strip_rows.append(
            {
                "call": self.step,
                "checkpoint": active.cid,
                "frontier_anchor": f"{fr.anchor[0]}:{fr.anchor[1]}",
                "orientation": "horizontal" if fr.horizontal else "vertical",
                "depth_i": depth,
                "side": self.side,
                "peak_cleaners": rep.peak_cleaners,
                "bound": 6 * depth + 4,
                "within": rep.peak_cleaners <= 6 * depth + 4,
                "explorers": rep.explorers_placed,
                "cleared_edges": rep.cleared_edges,
            }
        )
        self.step_records.append(
            StepRecord(self.step, self.phase, active.cid, snapshot, len(self.owner))
        )
        self.step += 1

    def _upgrade(self, active: Checkpoint) -> None:
        end_weights = self._live_weights()
        candidates = tuple(
            sorted(
                cid
                for cid in self.phase_start_live
                if cid != active.cid and self.checkpoints[cid].successor is None
            )
        )
        for cid in candidates:
            self.checkpoints[cid].successor = active.cid
        active.predecessors = candidates
        self.phase_records.append(
            PhaseRecord(
                phase=self.phase,
                start_step=self.phase_start_step,
                end_step=self.step,
                upgraded=active.cid,
                end_weights=end_weights,
                predecessors=candidates,
                explored_of_upgraded=self.explored[active.cid],
            )
        )

        self.live.discard(active.cid)
        active.retired = "upgraded"
        claimed: set[Coord] = set()
        for piece in frontiers_on_rectangle(active.frontier):
            seeds = tuple(p for p in piece.nodes() if p in self.owner and p not in claimed)
            if not seeds:
                continue
            claimed.update(seeds)
            merge = [
                self.checkpoints[cid]
                for cid in sorted(self.live)
                if self.checkpoints[cid].frontier == piece and self.checkpoints[cid].expansions == 0
            ]
            assert len(merge) <= 1, f"two unexpanded checkpoints share frontier {piece}"
            birth = self._new_checkpoint(piece, seeds)
            if merge:
                old = merge[0]
                self.live.discard(old.cid)
                old.retired = "merged"
                old.merged_into = birth.cid
                birth.seeds = tuple(sorted(set(old.seeds) | set(seeds)))
                for p, c in list(self.owner.items()):
                    if c == old.cid:
                        self.weights[old.cid] -= 1
                        self.weights[birth.cid] += 1
                        self.owner[p] = birth.cid
            for p in seeds:
                c = self.owner[p]
                if c != birth.cid:
                    self.weights[c] -= 1
                    self.weights[birth.cid] += 1
                    self.owner[p] = birth.cid
        assert self.weights[active.cid] == 0, (
            f"upgraded checkpoint {active.cid} still owns guard posts"
        )

        self.phase += 1
        self.phase_start_step = self.step
        for cid in sorted(self.live):
            if self.weights[cid] == 0:
                self.live.discard(cid)
                self.checkpoints[cid].retired = "emptied"
        self.phase_start_live = set(self.live)
        self.phase_start_weights.append((self.phase, self._live_weights()))
        self.trace.note(f"checkpoint {active.cid} upgraded; phase {self.phase} begins")

    def run(self) -> RunResult:
        self._initialize()
        max_iters = 2 * self.state.edge_count + 2 * self.side + 4
        iters = 0
        while not self.state.is_clean():
            iters += 1
            if iters > max_iters:
                raise AlgorithmStalled("sweep failed to terminate")
            active = self._select_active()
            self.active_cid = active.cid
            if active.expansions >= self.side:
                self._upgrade(active)
                continue
            self._clean_expansion(active)
        assert not self.crew.pins, f"guards left on a clean grid: {sorted(self.crew.pins)}"

        self.trace.k = self.crew.total
        lemmas = evaluate_lemmas(
            self.step_records,
            self.phase_records,
            self.phase_start_weights,
            self.side,
        )
        return RunResult(
            trace=self.trace,
            side=self.side,
            n_nodes=len(self.state.adj),
            n_edges=self.state.edge_count,
            k_peak=self.crew.total,
            guard_peak=self.guard_peak,
            steps=self.step,
            phases=self.phase,
            explorer_peak=max((r["explorers"] for r in self.strip_rows), default=0),
            lemmas=lemmas,
            strip_rows=self.strip_rows,
            checkpoints=self.checkpoints,
            step_records=self.step_records,
            phase_records=self.phase_records,
        )


def evaluate_lemmas(
    step_records: list[StepRecord],
    phase_records: list[PhaseRecord],
    phase_start_weights: list[tuple[int, dict[int, int]]],
    side: int,
) -> LemmaReport:
    report = LemmaReport()

    for prev, nxt in zip(step_records, step_records[1:]):
        for cid, w in prev.weights.items():
            if cid == prev.active or cid not in nxt.weights:
                continue
            if nxt.weights[cid] > w:
                report.inactive_nongrowth.append(
                    f"step {prev.step}: checkpoint {cid} grew {w} -> {nxt.weights[cid]} while inactive"
                )

    i = 0
    while i < len(step_records):
        j = i
        while j + 1 < len(step_records) and step_records[j + 1].active == step_records[i].active:
            j += 1
        if j + 1 < len(step_records):
            cid = step_records[i].active
            start = step_records[i].weights[cid]
            after = step_records[j + 1].weights.get(cid, 0)
            if after > start:
                report.active_interval_nongrowth.append(
                    f"steps {step_records[i].step}..{step_records[j].step}: checkpoint {cid} "
                    f"grew {start} -> {after} across its active interval"
                )
        i = j + 1

    for (pa, wa), (pb, wb) in zip(phase_start_weights, phase_start_weights[1:]):
        for cid, w in wa.items():
            if cid in wb and wb[cid] > w:
                report.phase_nongrowth.append(
                    f"checkpoint {cid} grew {w} -> {wb[cid]} between phase {pa} and {pb} starts"
                )

    for rec in phase_records:
        need = len(rec.predecessors) * side
        if rec.explored_of_upgraded < need:
            report.explored_credit.append(
                f"phase {rec.phase}: checkpoint {rec.upgraded} explored {rec.explored_of_upgraded} "
                f"< {len(rec.predecessors)} predecessors * side {side}"
            )
        if len(rec.predecessors) > 10:
            report.predecessor_cap.append(
                f"phase {rec.phase}: checkpoint {rec.upgraded} has {len(rec.predecessors)} predecessors"
            )
        total = sum(rec.end_weights.values())
        cap = rec.end_weights.get(rec.upgraded, 0) + 10 * side
        if total > cap:
            report.present_weight_cap.append(
                f"phase {rec.phase}: total weight {total} exceeds upgraded weight + 10*side = {cap}"
            )

    return report


def grid_searching(grid: PartialGrid, budget: int | None = None, side: int | None = None) -> RunResult:
    """Clean the whole grid with the checkpoint sweep; returns the run record."""
    state = SearchState(grid)
    engine = SweepEngine(state, side if side is not None else grid.side, budget)
    return engine.run()


@dataclass
class FloodResult:
    trace: StrategyTrace
    k_peak: int

    def metrics(self) -> dict:
        return {"kind": "flood", "peak_total": self.k_peak, "moves": len(self.trace.moves)}


def greedy_flood_state(state: SearchState, budget: int | None = None) -> FloodResult:
    """Baseline: always clean the lowest contaminated edge next.

    Shares the guard discipline of the sweep but ignores geometry entirely,
    so its team can grow with the contamination boundary.
    """
    trace = StrategyTrace(k=0)
    crew = Crew(state, trace, budget)
    home = state.grid.homebase

    sid = crew.draw_at(home)
    if state.contam_deg.get(home, 0):
        crew.pin(home, sid)
    else:
        crew.rest(sid)

    heap: list[tuple[Coord, Coord]] = []

    def scan(node: Coord) -> None:
        for q in crew.view.contaminated_ports(node):
            heapq.heappush(heap, (q, node))

    scan(home)
    while heap:
        target, access = heapq.heappop(heap)
        if state.is_edge_clean(target, access):
            continue
        sid = crew.draw_at(access)
        crew.slide(sid, target)
        crew.settle_arrival(sid, target)
        for p in (access, target):
            crew.release_if_safe(p)
        scan(target)
        scan(access)

    assert state.is_clean(), "flood ended with contaminated edges"
    trace.k = crew.total
    return FloodResult(trace=trace, k_peak=crew.total)


def greedy_flood(grid: PartialGrid, budget: int | None = None) -> FloodResult:
    return greedy_flood_state(SearchState(grid), budget)


@dataclass
class RoundRecord:
    round_index: int
    guess: int
    budget: int
    side: int
    outcome: str
    searchers_used: int
    moves: int


@dataclass
class UnknownSizeResult:
    rounds: list[RoundRecord]
    final: RunResult | None
    total_searchers: int

    def metrics(self) -> dict:
        out = {
            "kind": "doubling",
            "rounds": len(self.rounds),
            "total_searchers": self.total_searchers,
            "round_budget": self.rounds[-1].budget if self.rounds else 0,
        }
        if self.final is not None:
            out.update(
                {
                    "n_nodes": self.final.n_nodes,
                    "n_edges": self.final.n_edges,
                    "peak_total": self.final.k_peak,
                    "moves": len(self.final.trace.moves),
                }
            )
        return out


def mod_grid_searching(grid: PartialGrid, c: int = 46, max_rounds: int = 64) -> UnknownSizeResult:
    """Clean a grid of unknown size by doubling a guessed node count.

    Round i assumes at most 2**i nodes: the sweep runs sized for that guess
    under a hard team budget of c * ceil(sqrt(2**i)) searchers. A busted
    budget abandons the round; the abandoned teams are counted toward the
    total but take no further part.
    """
    if not grid.edges:
        final = grid_searching(grid)
        return UnknownSizeResult(rounds=[], final=final, total_searchers=final.k_peak)
    rounds: list[RoundRecord] = []
    total = 0
    for i in range(1, max_rounds + 1):
        guess = 2**i
        side = ceil_sqrt(guess)
        budget = c * side
        try:
            result = grid_searching(grid, budget=budget, side=side)
        except BudgetExceeded:
            total += budget
            rounds.append(RoundRecord(i, guess, budget, side, "budget_exceeded", budget, 0))
            continue
        total += result.k_peak
        rounds.append(
            RoundRecord(i, guess, budget, side, "completed", result.k_peak, len(result.trace.moves))
        )
        return UnknownSizeResult(rounds=rounds, final=result, total_searchers=total)
    raise AlgorithmStalled(f"no round budget sufficed within {max_rounds} rounds")
