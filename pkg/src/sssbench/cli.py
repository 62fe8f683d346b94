"""Command-line entry point.

Exit codes: 0 success, 2 usage error (including the node-budget guard),
3 engine disagreement, 4 invalid or terminal position.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .bench import (
    DEFAULT_NODE_BUDGET,
    DEFAULT_SUITE_SEED,
    EngineDisagreement,
    Suite,
    gen_suite,
    parse_depths,
    run_suite,
    summarize,
    write_csv,
)
from .engines.classic import minimax
from .engines.select import ENGINES, TerminalPositionError, run_engine
from .engines.sss import sss_star
from .engines.stats import NodeBudgetExceeded
from .game.base import INF
from .game.othello import OthelloGame, PositionParseError, initial_board, parse_position
from .game.synthetic import SyntheticGame, gen_tree, tree_from_leaves
from .strategies import EnumerationGuardError, enumerate_strategies, strategy_theorem, strategy_value
from .transposition import DEFAULT_CAPACITY
from .verify import DEFAULT_SEED, run_verification

EXIT_OK, EXIT_USAGE, EXIT_DISAGREE, EXIT_POSITION = 0, 2, 3, 4
TRACE_STEP_LIMIT = 10**5
DOT_NODE_LIMIT = 20_000


class UsageError(Exception):
    pass


def _int(text: str) -> int:
    return int(text, 0)


def _power_of_two(text: str) -> int:
    n = int(text, 0)
    if n < 1 or n & (n - 1):
        raise argparse.ArgumentTypeError(f"{text} is not a power of two")
    return n


def parse_tree_spec(text: str):
    """``w=2,d=4,seed=7`` or ``w=2,d=2,leaves=3:5:2:9``."""
    fields = {}
    for part in text.split(","):
        if "=" not in part:
            raise UsageError(f"bad tree spec item {part!r}; expected key=value")
        k, v = part.split("=", 1)
        fields[k.strip()] = v.strip()
    try:
        w, d = int(fields["w"]), int(fields["d"])
        if "leaves" in fields:
            return tree_from_leaves(w, d, [int(x) for x in fields["leaves"].split(":")])
        return gen_tree(w, d, int(fields.get("seed", "0"), 0))
    except KeyError as e:
        raise UsageError(f"tree spec needs {e.args[0]}=") from None
    except ValueError as e:
        raise UsageError(str(e)) from None


def _load_position(args) -> "object":
    if args.position is None:
        return initial_board()
    try:
        return parse_position(args.position)
    except PositionParseError as e:
        raise TerminalPositionError(f"invalid position: {e}") from None


# -- commands -----------------------------------------------------------------

def cmd_gen_suite(args) -> int:
    if not 0 <= args.min_ply <= args.max_ply <= 58:
        raise UsageError(f"need 0 <= --min-ply <= --max-ply <= 58, got {args.min_ply}..{args.max_ply}")
    if args.count < 0:
        raise UsageError("--count must be >= 0")
    suite = gen_suite(args.seed, args.count, args.min_ply, args.max_ply)
    try:
        Path(args.output).write_text(suite.to_text())
    except OSError as e:
        raise UsageError(f"cannot write {args.output}: {e}") from None
    print(f"wrote {len(suite)} positions to {args.output} (seed {args.seed:#x})")
    return EXIT_OK


def _engine_list(text: str) -> list[str]:
    names = [e.strip() for e in text.split(",") if e.strip()]
    bad = [e for e in names if e not in ENGINES]
    if bad or not names:
        raise UsageError(f"unknown engine(s) {', '.join(bad) or '(none)'}; choose from {', '.join(ENGINES)}")
    return names


def cmd_bench(args) -> int:
    engines = _engine_list(args.engines)
    try:
        depths = parse_depths(args.depths)
    except ValueError as e:
        raise UsageError(f"bad --depths: {e}") from None
    if any(not 1 <= d <= 12 for d in depths):
        raise UsageError("--depths must lie within 1..12")
    if args.suite:
        try:
            suite = Suite.from_text(Path(args.suite).read_text())
        except OSError as e:
            raise UsageError(f"cannot read suite: {e}") from None
        except PositionParseError as e:
            print(f"error: bad position in {args.suite}: {e}", file=sys.stderr)
            return EXIT_POSITION
    else:
        suite = gen_suite(args.seed, args.count, args.min_ply, args.max_ply)
    try:
        records = run_suite(suite, engines, depths, tt_capacity=args.tt_capacity,
                            node_budget=args.node_budget, timing=args.timing, jobs=args.jobs)
    except NodeBudgetExceeded as e:
        raise UsageError(f"{e}; raise --node-budget to allow this run") from None
    if args.output == "-":
        write_csv(records, sys.stdout)
    else:
        with open(args.output, "w", newline="") as f:
            write_csv(records, f)
        print(f"wrote {len(records)} records to {args.output}")
    if records and args.output != "-":
        print(summarize(records).format())
    return EXIT_OK


def cmd_verify(args) -> int:
    reports = run_verification(args.trees, args.seed, args.max_depth, ties=args.ties, per_tree=args.per_tree)
    for r in reports:
        print(r.format())
    ok = all(r.passed for r in reports)
    print("ALL PASS" if ok else "SOME PROPERTIES FAILED")
    return EXIT_OK if ok else 1


def cmd_trace(args) -> int:
    if args.tree:
        tree = parse_tree_spec(args.tree)
        game = SyntheticGame(tree)
        root, depth = game.root, tree.d if args.depth is None else args.depth
    else:
        game = OthelloGame()
        root = _load_position(args)
        depth = 2 if args.depth is None else args.depth
    visited, solved, evaluated = set(), {}, set()
    lines = []

    def on_step(rec):
        for path, status, merit in rec.pushed:
            visited.add(path)
            if status == "SOLVED":
                solved[path] = merit
        if rec.case == "F3":
            evaluated.add(rec.popped[0])
        lines.append(rec)

    try:
        result = sss_star(game, root, depth, trace=on_step, max_steps=args.max_steps)
    except NodeBudgetExceeded as e:
        raise UsageError(f"{e}; lower the depth or raise --max-steps") from None
    oracle = minimax(game, root, depth).value
    for rec in lines[:-1]:
        print(rec.format())
    print(lines[-1].format() + f" value {result.value} oracle {oracle}")
    if args.dot:
        Path(args.dot).write_text(trace_dot(game, root, depth, visited | {()}, solved, evaluated))
    return EXIT_OK


def trace_dot(game, root, depth, visited, solved, evaluated) -> str:
    """DOT graph of every node to ``depth``: evaluated leaves pink, solved
    interior nodes light blue, other visited nodes white, unvisited grey."""
    out = ["digraph sss {", "  node [style=filled, fontname=Helvetica];"]
    root_side = game.to_move(root)
    count = 0
    stack = [((), root)]
    while stack:
        path, state = stack.pop()
        count += 1
        if count > DOT_NODE_LIMIT:
            raise UsageError(f"tree has more than {DOT_NODE_LIMIT} nodes; too large for --dot")
        name = "n" + "_".join(map(str, path)) if path else "root"
        shape = "box" if game.to_move(state) == root_side else "ellipse"
        moves = game.moves(state) if len(path) < depth else ()
        if path in evaluated:
            color = "pink"
        elif path in solved:
            color = "lightblue"
        elif path in visited:
            color = "white"
        else:
            color = "grey"
        label = ".".join(map(str, path)) or "root"
        if not moves:
            label += f"\\n{game.evaluate(state, root_side)}"
        if path in solved:
            merit = solved[path]
            label += f"\\nh={'+INF' if merit >= INF else merit}"
        out.append(f'  {name} [label="{label}", shape={shape}, fillcolor={color}];')
        for i in range(len(moves) - 1, -1, -1):
            stack.append((path + (i,), game.apply(state, moves[i])))
        for i in range(len(moves)):
            cname = "n" + "_".join(map(str, path + (i,)))
            out.append(f'  {name} -> {cname} [label="{game.format_move(moves[i])}"];')
    out.append("}")
    return "\n".join(out) + "\n"


def cmd_strategies(args) -> int:
    tree = parse_tree_spec(args.tree)
    try:
        strategies = enumerate_strategies(tree, args.limit)
    except EnumerationGuardError as e:
        raise UsageError(str(e)) from None
    check = strategy_theorem(tree, args.limit)
    print(f"{len(strategies)} strategies")
    for i, s in enumerate(strategies):
        choices = " ".join(f"{'.'.join(map(str, p)) or 'root'}->{c}" for p, c in sorted(s.move_choices.items()))
        leaves = " ".join(f"{'.'.join(map(str, p))}={tree.leaf_value(p)}" for p in sorted(s.leaf_paths))
        print(f"  #{i} value {strategy_value(tree, s)}  choices [{choices}]  leaves [{leaves}]")
    print(f"max-of-min {check.best_strategy_value}  minimax {check.minimax_value}")
    return EXIT_OK


def cmd_best_move(args) -> int:
    game = OthelloGame()
    board = _load_position(args)
    if not game.moves(board):
        raise TerminalPositionError("position is terminal; no move to choose")
    if args.depth < 1:
        raise UsageError("--depth must be >= 1")
    r = run_engine(args.engine, game, board, args.depth, tt_capacity=args.tt_capacity)
    s = r.stats
    print(f"{game.format_move(r.best_move)} value {r.value} engine {args.engine} depth {args.depth} "
          f"leaf_evals {s.leaf_evals} interior_expansions {s.interior_expansions} "
          f"tt_hits {s.tt_hits} open_peak {s.open_peak} gamma_iterations {s.gamma_iterations}")
    return EXIT_OK


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sssbench", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen-suite", help="generate a benchmark suite of Othello positions")
    g.add_argument("--seed", type=_int, default=DEFAULT_SUITE_SEED)
    g.add_argument("--count", type=int, default=50)
    g.add_argument("--min-ply", type=int, default=8)
    g.add_argument("--max-ply", type=int, default=44)
    g.add_argument("-o", "--output", required=True)
    g.set_defaults(func=cmd_gen_suite)

    b = sub.add_parser("bench", help="run engines over a suite and write CSV")
    b.add_argument("--suite", help="suite file; generated from --seed/--count/... when omitted")
    b.add_argument("--seed", type=_int, default=DEFAULT_SUITE_SEED)
    b.add_argument("--count", type=int, default=50)
    b.add_argument("--min-ply", type=int, default=8)
    b.add_argument("--max-ply", type=int, default=44)
    b.add_argument("--engines", default="ab_enhanced,mt_sss")
    b.add_argument("--depths", default="2..8", help="inclusive range A..B or comma list")
    b.add_argument("-o", "--output", required=True, help="CSV path, or - for stdout")
    b.add_argument("--tt-capacity", type=_power_of_two, default=DEFAULT_CAPACITY)
    b.add_argument("--node-budget", type=_int, default=DEFAULT_NODE_BUDGET,
                   help="abort when the run's total leaf evaluations exceed this")
    b.add_argument("--timing", action="store_true", help="record elapsed_ns (otherwise 0, for reproducible CSV)")
    b.add_argument("--jobs", type=int, default=1)
    b.set_defaults(func=cmd_bench)

    v = sub.add_parser("verify", help="check engine properties on seeded synthetic trees")
    v.add_argument("--trees", type=int, default=1000)
    v.add_argument("--max-depth", type=int)
    v.add_argument("--seed", type=_int, default=DEFAULT_SEED)
    v.add_argument("--ties", action="store_true", help="allow tied leaves in the dominance trees")
    v.add_argument("--per-tree", action="store_true", help="list SSS*/MT-SSS* leaf counts for every tree")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("trace", help="print every SSS* step")
    src = t.add_mutually_exclusive_group()
    src.add_argument("--tree", help="synthetic tree, e.g. w=2,d=2,seed=1 or w=2,d=2,leaves=3:5:2:9")
    src.add_argument("--position", help="Othello position text (default: initial position)")
    t.add_argument("--depth", type=int)
    t.add_argument("--dot", help="write a DOT graph of the searched tree here")
    t.add_argument("--max-steps", type=int, default=TRACE_STEP_LIMIT)
    t.set_defaults(func=cmd_trace)

    s = sub.add_parser("strategies", help="enumerate the strategies of a synthetic tree")
    s.add_argument("--tree", required=True)
    s.add_argument("--limit", type=int, default=10**6)
    s.set_defaults(func=cmd_strategies)

    m = sub.add_parser("best-move", help="pick a move for an Othello position")
    m.add_argument("--position", help="position text (default: initial position)")
    m.add_argument("--depth", type=int, default=4)
    m.add_argument("--engine", choices=ENGINES, default="ab_enhanced")
    m.add_argument("--tt-capacity", type=_power_of_two, default=DEFAULT_CAPACITY)
    m.set_defaults(func=cmd_best_move)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"{parser.prog}: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except EngineDisagreement as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DISAGREE
    except TerminalPositionError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_POSITION


if __name__ == "__main__":
    sys.exit(main())
