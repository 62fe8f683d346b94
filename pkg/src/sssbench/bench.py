"""Benchmark harness: Othello suites, per-cell engine runs, CSV and summary."""

from __future__ import annotations

import csv
import io
import math
import random
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, field, fields
from statistics import fmean

from .engines.select import run_engine
from .engines.stats import NodeBudgetExceeded
from .game.othello import (
    PASS,
    OthelloBoard,
    OthelloGame,
    apply_move,
    format_position,
    initial_board,
    legal_moves,
    parse_position,
)
from .transposition import DEFAULT_CAPACITY

CSV_HEADER = (
    "position_id,engine,depth,leaf_evals,leaf_evals_final_iter,interior_expansions,"
    "tt_probes,tt_hits,open_peak,gamma_iterations,elapsed_ns,root_value,best_move"
)

DEFAULT_SUITE_SEED = 0xC0FFEE
DEFAULT_NODE_BUDGET = 10**8


class EngineDisagreement(RuntimeError):
    def __init__(self, position_id, depth, values: dict):
        self.position_id, self.depth, self.values = position_id, depth, values
        shown = ", ".join(f"{e}={v}" for e, v in values.items())
        super().__init__(f"engines disagree on position {position_id} at depth {depth}: {shown}")


@dataclass
class Suite:
    positions: list[tuple[int, OthelloBoard]]
    seed: int | None = None
    params: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.positions)

    def to_text(self) -> str:
        return "".join(format_position(b) + "\n" for _, b in self.positions)

    @classmethod
    def from_text(cls, text: str) -> "Suite":
        boards = []
        for line in text.splitlines():
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            boards.append(parse_position(line))
        return cls(list(enumerate(boards)))


def gen_suite(seed: int, count: int, min_ply: int, max_ply: int) -> Suite:
    """Positions from uniform random playouts, each stopped at a random ply.

    A playout that ends the game early, or stops where the mover must pass,
    is thrown away and re-rolled.
    """
    if not 0 <= min_ply <= max_ply <= 58:
        raise ValueError(f"need 0 <= min_ply <= max_ply <= 58, got {min_ply}..{max_ply}")
    rng = random.Random(seed)
    positions = []
    while len(positions) < count:
        target = rng.randint(min_ply, max_ply)
        board = initial_board()
        for _ in range(target):
            moves = legal_moves(board)
            if not moves:
                break
            board = apply_move(board, rng.choice(moves))
        else:
            moves = legal_moves(board)
            if moves and moves != [PASS]:
                positions.append((len(positions), board))
    return Suite(positions, seed, dict(count=count, min_ply=min_ply, max_ply=max_ply))


def parse_depths(text: str) -> list[int]:
    """``"2..8"`` (inclusive), ``"6"`` or ``"2,4,6"``."""
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        lo, hi = int(lo), int(hi)
        if lo > hi:
            raise ValueError(f"empty depth range {text}")
        return list(range(lo, hi + 1))
    return [int(x) for x in text.split(",")]


@dataclass
class BenchRecord:
    position_id: int
    engine: str
    depth: int
    leaf_evals: int
    leaf_evals_final_iter: int
    interior_expansions: int
    tt_probes: int
    tt_hits: int
    open_peak: int
    gamma_iterations: int
    elapsed_ns: int
    root_value: int
    best_move: str


def _run_cell(args) -> BenchRecord:
    position_id, board, engine, depth, tt_capacity, budget, timing = args
    game = OthelloGame()
    r = run_engine(engine, game, board, depth, tt_capacity=tt_capacity, node_budget=budget)
    s = r.stats
    return BenchRecord(
        position_id, engine, depth, s.leaf_evals, s.leaf_evals_final_iter, s.interior_expansions,
        s.tt_probes, s.tt_hits, s.open_peak, s.gamma_iterations, s.elapsed_ns if timing else 0,
        r.value, "" if r.best_move is None else game.format_move(r.best_move),
    )


def run_suite(suite: Suite, engines, depths, *, tt_capacity: int = DEFAULT_CAPACITY,
              node_budget: int | None = DEFAULT_NODE_BUDGET, timing: bool = False, jobs: int = 1,
              progress=None) -> list[BenchRecord]:
    """One record per (position, depth, engine), in that nesting order.

    Every cell gets fresh engine state. ``timing`` fills ``elapsed_ns``;
    otherwise it is 0 so repeated runs are byte-identical. The node budget
    caps the total leaf evaluations of the whole run.
    """
    engines, depths = list(engines), list(depths)
    if any(not 1 <= d <= 12 for d in depths):
        raise ValueError("depths must lie in 1..12")
    cells = [(pid, board, e, d) for pid, board in suite.positions for d in depths for e in engines]
    records: list[BenchRecord] = []
    used = 0

    def check(rec: BenchRecord):
        nonlocal used
        used += rec.leaf_evals
        if node_budget is not None and used > node_budget:
            raise NodeBudgetExceeded(f"run exceeded node budget of {node_budget} leaf evaluations")
        records.append(rec)
        if progress is not None:
            progress(rec)
        if rec.engine == engines[-1]:
            group = records[-len(engines):]
            values = {r.engine: r.root_value for r in group}
            if len(set(values.values())) > 1:
                raise EngineDisagreement(rec.position_id, rec.depth, values)

    if jobs > 1:
        # budget is enforced per cell in workers and in total here
        args = [(pid, b, e, d, tt_capacity, node_budget, timing) for pid, b, e, d in cells]
        with ProcessPoolExecutor(jobs) as pool:
            for rec in pool.map(_run_cell, args, chunksize=max(1, len(engines))):
                check(rec)
    else:
        for pid, b, e, d in cells:
            remaining = None if node_budget is None else node_budget - used
            check(_run_cell((pid, b, e, d, tt_capacity, remaining, timing)))
    return records


def write_csv(records, out) -> None:
    out.write(CSV_HEADER + "\n")
    w = csv.writer(out, lineterminator="\n")
    for r in records:
        w.writerow(astuple(r))


def records_to_csv(records) -> str:
    buf = io.StringIO()
    write_csv(records, buf)
    return buf.getvalue()


def read_csv(text: str) -> list[BenchRecord]:
    reader = csv.DictReader(io.StringIO(text))
    types = {f.name: f.type for f in fields(BenchRecord)}
    out = []
    for row in reader:
        out.append(BenchRecord(**{k: (row[k] if types[k] == "str" else int(row[k])) for k in types}))
    return out


def geometric_mean(values) -> float:
    values = list(values)
    if not values:
        raise ValueError("geometric mean of nothing")
    if any(v <= 0 for v in values):
        raise ValueError("geometric mean needs positive values")
    return math.exp(fmean(math.log(v) for v in values))


@dataclass
class Summary:
    engines: list[str]
    depths: list[int]
    # geomean[depth][engine]
    geomean: dict[int, dict[str, float]]
    # ratio[depth][(a, b)] = geomean a / geomean b
    ratio: dict[int, dict[tuple[str, str], float]]
    # growth[engine][(d, d + 1)] = mean over positions of leaf(d + 1) / leaf(d)
    growth: dict[str, dict[tuple[int, int], float]]

    def parity_means(self, engine: str) -> tuple[float | None, float | None]:
        """Mean growth factor into odd depths and into even depths."""
        g = self.growth.get(engine, {})
        to_odd = [f for (d, _), f in g.items() if d % 2 == 0]
        to_even = [f for (d, _), f in g.items() if d % 2 == 1]
        return (fmean(to_odd) if to_odd else None, fmean(to_even) if to_even else None)

    def format(self) -> str:
        lines = ["leaf evaluations, geometric mean over positions"]
        lines.append("depth " + " ".join(f"{e:>12}" for e in self.engines)
                     + "".join(f" {a}/{b:>s}" for a, b in self._pairs()))
        for d in self.depths:
            row = f"{d:>5} " + " ".join(f"{self.geomean[d][e]:>12.1f}" for e in self.engines)
            row += "".join(f" {self.ratio[d][p]:>{len(p[0]) + len(p[1]) + 1}.3f}" for p in self._pairs())
            lines.append(row)
        if any(self.growth.values()):
            lines.append("growth factor leaf(d+1)/leaf(d), mean over positions")
            for e in self.engines:
                parts = [f"{a}->{b}: {f:.2f}" for (a, b), f in sorted(self.growth[e].items())]
                lines.append(f"  {e}: " + ", ".join(parts))
                to_odd, to_even = self.parity_means(e)
                if to_odd is not None and to_even is not None:
                    verdict = "exceeds" if to_odd > to_even else "does not exceed"
                    lines.append(f"  {e}: even->odd mean {to_odd:.2f} {verdict} odd->even mean {to_even:.2f}")
        return "\n".join(lines)

    def _pairs(self):
        return list(self.ratio[self.depths[0]].keys()) if self.depths else []


def summarize(records, baseline: str | None = None) -> Summary:
    """Per-depth geometric means and ratios against ``baseline``, plus growth factors.

    ``baseline`` defaults to ``ab_enhanced`` when present, else the first engine.
    """
    records = list(records)
    if not records:
        raise ValueError("no records to summarize")
    engines = list(dict.fromkeys(r.engine for r in records))
    depths = sorted({r.depth for r in records})
    if baseline is None:
        baseline = "ab_enhanced" if "ab_enhanced" in engines else engines[0]
    leaf = defaultdict(dict)  # (engine, depth) -> {position: leaf_evals}
    for r in records:
        leaf[r.engine, r.depth][r.position_id] = r.leaf_evals
    geomean = {d: {e: geometric_mean(leaf[e, d].values()) for e in engines if leaf[e, d]} for d in depths}
    ratio = {d: {(e, baseline): geomean[d][e] / geomean[d][baseline] for e in engines if e != baseline}
             for d in depths}
    growth = {}
    for e in engines:
        growth[e] = {}
        for d in depths:
            if d + 1 not in depths:
                continue
            a, b = leaf[e, d], leaf[e, d + 1]
            common = [p for p in a if p in b]
            if common:
                growth[e][d, d + 1] = fmean(b[p] / a[p] for p in common)
    return Summary(engines, depths, geomean, ratio, growth)
