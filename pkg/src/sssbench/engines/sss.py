"""Stockman's SSS*: best-first search over OPEN states driven by the Γ operator.

One Γ step pops the head of OPEN and applies exactly one case:

    F1  LIVE MAX interior      push every child LIVE, same merit
    F2  LIVE MIN interior      push the first child LIVE, same merit
    F3  LIVE leaf              push itself SOLVED with min(eval, merit)
    B1  SOLVED root            done; the merit is the minimax value
    B2  SOLVED, MAX parent     push parent SOLVED, purge parent's subtree
    B3  SOLVED, MIN parent,    push next sibling LIVE, same merit
        untried sibling
    B4  SOLVED, MIN parent,    push parent SOLVED
        last sibling
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from ..game.base import INF, Player
from ..open_list import GammaError, OpenList, SssState, SssStatus
from .stats import NodeBudgetExceeded, SearchResult, SearchStats

LIVE, SOLVED = SssStatus.LIVE, SssStatus.SOLVED


class SssNode:
    """A tree node reachable from OPEN: its game state and a parent link."""

    __slots__ = ("path", "state", "parent", "player", "root_side", "_moves")

    def __init__(self, path, state, parent, player, root_side):
        self.path = path
        self.state = state
        self.parent = parent
        self.player = player
        self.root_side = root_side
        self._moves = None

    def moves(self, game):
        if self._moves is None:
            self._moves = game.moves(self.state)
        return self._moves

    def child(self, game, i):
        state = game.apply(self.state, self.moves(game)[i])
        player = Player.MAX if game.to_move(state) == self.root_side else Player.MIN
        return SssNode(self.path + (i,), state, self, player, self.root_side)


def root_state(game, root) -> SssState:
    node = SssNode((), root, None, Player.MAX, game.to_move(root))
    return SssState((), LIVE, INF, Player.MAX, node)


@dataclass
class StepRecord:
    step: int
    case: str
    popped: tuple
    pushed: list = field(default_factory=list)
    purged: int = 0
    queue_size: int = 0
    evaluated: object = None  # leaf game state evaluated by an F3 step

    def format(self) -> str:
        path, status, merit = self.popped
        pushed = " ".join(f"({_fmt_path(p)},{s},{_fmt_merit(m)})" for p, s, m in self.pushed)
        line = (f"step {self.step} pop ({_fmt_path(path)},{status},{_fmt_merit(merit)}) "
                f"case {self.case} push [{pushed}]")
        if self.purged:
            line += f" purge {self.purged}"
        return line + f" open {self.queue_size}"


def _fmt_path(path) -> str:
    return "root" if not path else ".".join(map(str, path))


def _fmt_merit(m: int) -> str:
    return "+INF" if m >= INF else str(m)


def _gamma(game, open_list: OpenList, depth_limit: int, check_ancestors: bool = True):
    """Apply one Γ case; returns ``(case, popped, pushed, purged)``."""
    s = open_list.pop_max()
    node: SssNode = s.node
    path = s.path
    purged = 0
    if s.status is LIVE:
        moves = node.moves(game) if len(path) < depth_limit else ()
        if not moves:
            value = game.evaluate(node.state, node.root_side)
            case, pushed = "F3", [SssState(path, SOLVED, min(value, s.merit), s.player, node)]
        elif s.player is Player.MAX:
            case, pushed = "F1", []
            for i in range(len(moves)):
                child = node.child(game, i)
                pushed.append(SssState(child.path, LIVE, s.merit, child.player, child))
        else:
            child = node.child(game, 0)
            case, pushed = "F2", [SssState(child.path, LIVE, s.merit, child.player, child)]
    else:
        parent = node.parent
        if parent is None:
            return "B1", s, [], 0
        if parent.player is Player.MAX:
            purged = open_list.purge_descendants(parent.path)
            case, pushed = "B2", [SssState(parent.path, SOLVED, s.merit, parent.player, parent)]
        elif path[-1] + 1 < len(parent.moves(game)):
            sib = parent.child(game, path[-1] + 1)
            case, pushed = "B3", [SssState(sib.path, LIVE, s.merit, sib.player, sib)]
        else:
            case, pushed = "B4", [SssState(parent.path, SOLVED, s.merit, parent.player, parent)]
    for state in pushed:
        if check_ancestors:
            anc = open_list.queued_ancestor(state.path)
            if anc is not None:
                raise GammaError(f"Γ pushed {state.path} while its ancestor {anc} is on OPEN")
        open_list.push(state)
    return case, s, pushed, purged


def gamma_step(game, open_list: OpenList, depth_limit: int, step: int = 0) -> StepRecord:
    """Pop the head of OPEN and apply the single matching Γ case.

    Raises :class:`GammaError` if a push would put a node on OPEN together
    with one of its ancestors.
    """
    return _record(step, _gamma(game, open_list, depth_limit), open_list)


def _record(step, outcome, open_list) -> StepRecord:
    case, popped, pushed, purged = outcome
    return StepRecord(
        step, case, popped.triple(), [p.triple() for p in pushed], purged, len(open_list),
        popped.node.state if case == "F3" else None,
    )


def sss_star(game, root, depth: int, *, record_leaves: bool = False, node_budget=None,
             trace=None, check: bool = False, max_steps: int | None = None) -> SearchResult:
    """Run Γ steps from ``(root, LIVE, +INF)`` until the root is solved.

    ``trace``, if given, is called with every :class:`StepRecord`. ``check``
    turns on the consistency checks of OPEN on every push (ancestors at
    O(depth), descendants at O(size)).
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    t0 = time.perf_counter_ns()
    stats = SearchStats()
    leaves = [] if record_leaves else None
    budget = float("inf") if node_budget is None else node_budget
    steps = float("inf") if max_steps is None else max_steps
    open_list = OpenList(strict=check)
    open_list.push(root_state(game, root))
    root_moves = game.moves(root)
    step = 0
    best_index = None
    while True:
        step += 1
        if step > steps:
            raise NodeBudgetExceeded(f"SSS* exceeded {max_steps} steps")
        outcome = _gamma(game, open_list, depth, check)
        if trace is not None:
            trace(_record(step, outcome, open_list))
        case, s = outcome[0], outcome[1]
        if case == "F3":
            stats.leaf_evals += 1
            if stats.leaf_evals > budget:
                raise NodeBudgetExceeded(f"leaf budget of {budget:.0f} evaluations exceeded")
            if leaves is not None:
                leaves.append(s.node.state)
        elif case == "F1" or case == "F2":
            stats.interior_expansions += 1
        elif case == "B2" and len(s.path) == 1:
            best_index = s.path[0]
        elif case == "B1":
            break
    value = s.merit
    best_move = root_moves[best_index] if depth >= 1 and root_moves else None
    stats.leaf_evals_final_iter = stats.leaf_evals
    stats.open_peak = open_list.peak
    stats.elapsed_ns = time.perf_counter_ns() - t0
    return SearchResult(value, best_move, stats, leaves)
