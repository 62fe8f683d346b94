"""Alpha-beta with a two-bound transposition table, history heuristic and
iterative deepening, plus MT-SSS* built from repeated null-window calls."""

from __future__ import annotations

import time
from collections import defaultdict

from ..game.base import INF
from ..transposition import DEFAULT_CAPACITY, TranspositionTable
from .stats import NodeBudgetExceeded, SearchResult, SearchStats


class HistoryTable:
    """Cutoff counters per (side, move); only ever incremented."""

    def __init__(self):
        # stored negated so an ascending sort on the raw counter is best-first
        self._neg = defaultdict(lambda: defaultdict(int))

    def reward(self, side, move, depth: int) -> None:
        self._neg[side][move] -= depth * depth

    def score(self, side, move) -> int:
        table = self._neg.get(side)
        return -table[move] if table else 0

    def order(self, side, moves, first=None):
        """TT move first, then descending history score, natural order breaking ties."""
        table = self._neg.get(side)
        if table:
            moves = sorted(moves, key=table.__getitem__)
        else:
            moves = list(moves)
        if first is not None and first in moves and moves[0] != first:
            moves.remove(first)
            moves.insert(0, first)
        return moves


class TTSearcher:
    """One search's worth of state: table, history and counters.

    All values are from the root mover's point of view; a node is MAX when
    its side to move equals the root's.
    """

    def __init__(self, game, root, *, tt: TranspositionTable | None = None, tt_capacity: int = DEFAULT_CAPACITY,
                 use_ordering: bool = True, record_leaves: bool = False, node_budget=None):
        self.game = game
        self.root = root
        self.root_side = game.to_move(root)
        self.tt = tt if tt is not None else TranspositionTable(tt_capacity)
        self.tt.new_epoch()
        self.history = HistoryTable()
        self.use_ordering = use_ordering
        self.stats = SearchStats()
        self.leaves = [] if record_leaves else None
        self.budget = float("inf") if node_budget is None else node_budget

    def count_leaf(self, state) -> None:
        stats = self.stats
        stats.leaf_evals += 1
        if stats.leaf_evals > self.budget:
            raise NodeBudgetExceeded(f"leaf budget of {self.budget:.0f} evaluations exceeded")
        if self.leaves is not None:
            self.leaves.append(state)

    def ordered(self, state, moves, tt_move):
        if not self.use_ordering:
            return moves
        return self.history.order(self.game.to_move(state), moves, tt_move)

    def search(self, state, depth: int, alpha: int, beta: int) -> int:
        """Fail-soft alpha-beta with TT cutoffs; stores the resulting bound."""
        game, tt = self.game, self.tt
        key = game.key(state)
        hit = tt.lookup(key)
        tt_move = None
        if hit is not None:
            tt_move = hit.best_move
            # bounds only from the same remaining depth (see probe's exact_depth)
            if hit.depth_remaining == depth:
                tt.hits += 1
                lower, upper = hit.lower, hit.upper
                if lower >= beta or lower == upper:
                    return lower
                if upper <= alpha:
                    return upper
                if lower > alpha:
                    alpha = lower
                if upper < beta:
                    beta = upper
        moves = game.moves(state) if depth else ()
        if not moves:
            stats = self.stats
            stats.leaf_evals += 1
            if stats.leaf_evals > self.budget:
                raise NodeBudgetExceeded(f"leaf budget of {self.budget:.0f} evaluations exceeded")
            if self.leaves is not None:
                self.leaves.append(state)
            g = game.evaluate(state, self.root_side)
            tt.store(key, depth, g, g, None)
            return g
        self.stats.interior_expansions += 1
        best_move = None
        a, b = alpha, beta
        side = game.to_move(state)
        if self.use_ordering:
            moves = self.history.order(side, moves, tt_move)
        if side == self.root_side:
            g = -INF
            for m in moves:
                v = self.search(game.apply(state, m), depth - 1, a, b)
                if v > g or best_move is None:
                    g, best_move = v, m
                    if g > a:
                        a = g
                        if g >= b:
                            if self.use_ordering:
                                self.history.reward(side, m, depth)
                            break
        else:
            g = INF
            for m in moves:
                v = self.search(game.apply(state, m), depth - 1, a, b)
                if v < g or best_move is None:
                    g, best_move = v, m
                    if g < b:
                        b = g
                        if g <= a:
                            if self.use_ordering:
                                self.history.reward(side, m, depth)
                            break
        self._store(key, depth, g, alpha, beta, best_move)
        return g

    def _store(self, key, depth, g, alpha, beta, best_move):
        if g <= alpha:
            self.tt.store(key, depth, -INF, g, best_move)
        elif g >= beta:
            self.tt.store(key, depth, g, INF, best_move)
        else:
            self.tt.store(key, depth, g, g, best_move)

    def search_root(self, depth: int, alpha: int, beta: int, order):
        """Search the root's children in ``order``; returns (value, best move, child scores)."""
        game, root = self.game, self.root
        self.stats.interior_expansions += 1
        g, best_move, scores = -INF, None, {}
        a = alpha
        for m in order:
            v = self.search(game.apply(root, m), depth - 1, a, beta)
            scores[m] = v
            if v > g or best_move is None:
                g, best_move = v, m
                if g > a:
                    a = g
                    if g >= beta:
                        if self.use_ordering:
                            self.history.reward(self.root_side, m, depth)
                        break
        self._store(game.key(root), depth, g, alpha, beta, best_move)
        return g, best_move, scores

    def finish(self, t0: int) -> SearchStats:
        s = self.stats
        s.tt_probes, s.tt_hits, s.tt_stores = self.tt.probes, self.tt.hits, self.tt.stores
        s.elapsed_ns = time.perf_counter_ns() - t0
        return s


def _leaf_only(searcher: TTSearcher, t0: int) -> SearchResult:
    root = searcher.root
    searcher.count_leaf(root)
    searcher.stats.leaf_evals_final_iter = 1
    value = searcher.game.evaluate(root, searcher.root_side)
    return SearchResult(value, None, searcher.finish(t0), searcher.leaves)


def alphabeta_enhanced(game, root, depth: int, *, tt_capacity: int = DEFAULT_CAPACITY,
                       tt: TranspositionTable | None = None, record_leaves: bool = False,
                       node_budget=None) -> SearchResult:
    """Iterative deepening 1..depth with TT, history heuristic and root re-sorting.

    Root moves are re-sorted between iterations by the previous iteration's
    child scores (descending, stable); interior nodes use TT move then history.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    t0 = time.perf_counter_ns()
    s = TTSearcher(game, root, tt=tt, tt_capacity=tt_capacity, record_leaves=record_leaves,
                   node_budget=node_budget)
    order = list(game.moves(root))
    if not order:
        return _leaf_only(s, t0)
    value = best = None
    for d in range(1, depth + 1):
        before = s.stats.leaf_evals
        value, best, scores = s.search_root(d, -INF, INF, order)
        s.stats.leaf_evals_final_iter = s.stats.leaf_evals - before
        order.sort(key=lambda m: -scores.get(m, -INF))
    # first move in the final order achieving the root value
    best = next((m for m in order if scores.get(m) == value), best)
    return SearchResult(value, best, s.finish(t0), s.leaves)


def mt_sss(game, root, depth: int, *, deepening: bool = True, ordering: bool = True,
           tt_capacity: int = DEFAULT_CAPACITY, tt: TranspositionTable | None = None,
           record_leaves: bool = False, node_budget=None) -> SearchResult:
    """SSS* as a sequence of null-window alpha-beta calls sharing one TT.

    Starting from an upper bound of +INF, each pass tests ``value >= gamma``
    with window ``(gamma - 1, gamma)`` and lowers the bound until a pass
    fails high. With ``deepening`` the loop runs for each depth 1..depth and
    with ``ordering`` children follow TT move and history; with both off this
    is textbook MT-SSS* in natural child order.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    t0 = time.perf_counter_ns()
    s = TTSearcher(game, root, tt=tt, tt_capacity=tt_capacity, use_ordering=ordering,
                   record_leaves=record_leaves, node_budget=node_budget)
    moves = game.moves(root)
    if not moves:
        return _leaf_only(s, t0)
    root_key = game.key(root)
    gammas: list[int] = []
    g = best = None
    for d in range(1 if deepening else depth, depth + 1):
        before = s.stats.leaf_evals
        gammas = []
        g = INF
        while True:
            gamma = g
            gammas.append(gamma)
            hit = s.tt.probe(root_key, d, exact_depth=True)
            order = s.ordered(root, moves, hit.best_move if hit else None)
            g, best, _ = s.search_root(d, gamma - 1, gamma, order)
            s.stats.gamma_iterations += 1
            if g >= gamma:
                break
        s.stats.leaf_evals_final_iter = s.stats.leaf_evals - before
    return SearchResult(g, best, s.finish(t0), s.leaves, gammas)
