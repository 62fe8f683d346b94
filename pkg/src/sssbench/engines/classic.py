"""Brute-force minimax and vanilla fail-soft alpha-beta, both in natural move order."""

from __future__ import annotations

import time

from ..game.base import INF
from .stats import NodeBudgetExceeded, SearchResult, SearchStats


def _budget(node_budget) -> float:
    return float("inf") if node_budget is None else node_budget


def minimax(game, root, depth: int, *, record_leaves: bool = False, node_budget=None) -> SearchResult:
    """Exact depth-limited minimax with no pruning (the oracle for every other engine)."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    t0 = time.perf_counter_ns()
    stats = SearchStats()
    leaves = [] if record_leaves else None
    budget = _budget(node_budget)
    root_side = game.to_move(root)
    moves_of, apply, evaluate, to_move = game.moves, game.apply, game.evaluate, game.to_move

    def search(state, d):
        moves = moves_of(state) if d else ()
        if not moves:
            stats.leaf_evals += 1
            if stats.leaf_evals > budget:
                raise NodeBudgetExceeded(f"leaf budget of {budget:.0f} evaluations exceeded")
            if leaves is not None:
                leaves.append(state)
            return evaluate(state, root_side)
        stats.interior_expansions += 1
        if d == 1:
            # children are leaves whatever their move lists say
            stats.leaf_evals += len(moves)
            if stats.leaf_evals > budget:
                raise NodeBudgetExceeded(f"leaf budget of {budget:.0f} evaluations exceeded")
            if leaves is None:
                values = [evaluate(apply(state, m), root_side) for m in moves]
            else:
                kids = [apply(state, m) for m in moves]
                leaves.extend(kids)
                values = [evaluate(k, root_side) for k in kids]
        else:
            values = [search(apply(state, m), d - 1) for m in moves]
        return max(values) if to_move(state) == root_side else min(values)

    best_move = None
    moves = moves_of(root) if depth else ()
    if not moves:
        value = search(root, 0)
    else:
        stats.interior_expansions += 1
        value = -INF - 1
        for m in moves:
            v = search(apply(root, m), depth - 1)
            if v > value:
                value, best_move = v, m
    stats.leaf_evals_final_iter = stats.leaf_evals
    stats.elapsed_ns = time.perf_counter_ns() - t0
    return SearchResult(value, best_move, stats, leaves)


def alphabeta(game, root, depth: int, alpha: int = -INF, beta: int = INF, *,
              record_leaves: bool = False, node_budget=None) -> SearchResult:
    """Fail-soft alpha-beta over the adapter's natural child order.

    A result inside ``(alpha, beta)`` is exact; a result ``<= alpha`` is an
    upper bound and a result ``>= beta`` a lower bound on the minimax value.
    """
    if alpha >= beta:
        raise ValueError(f"empty window ({alpha}, {beta})")
    if depth < 0:
        raise ValueError("depth must be >= 0")
    t0 = time.perf_counter_ns()
    stats = SearchStats()
    leaves = [] if record_leaves else None
    budget = _budget(node_budget)
    root_side = game.to_move(root)
    moves_of, apply, evaluate, to_move = game.moves, game.apply, game.evaluate, game.to_move
    best = [None]

    def search(state, d, a, b, is_root=False):
        moves = moves_of(state) if d else ()
        if not moves:
            stats.leaf_evals += 1
            if stats.leaf_evals > budget:
                raise NodeBudgetExceeded(f"leaf budget of {budget:.0f} evaluations exceeded")
            if leaves is not None:
                leaves.append(state)
            return evaluate(state, root_side)
        stats.interior_expansions += 1
        if to_move(state) == root_side:
            g = -INF - 1
            for m in moves:
                v = search(apply(state, m), d - 1, a, b)
                if v > g:
                    g = v
                    if is_root:
                        best[0] = m
                    if g > a:
                        a = g
                        if g >= b:
                            break
        else:
            g = INF + 1
            for m in moves:
                v = search(apply(state, m), d - 1, a, b)
                if v < g:
                    g = v
                    if g < b:
                        b = g
                        if g <= a:
                            break
        return g

    value = search(root, depth, alpha, beta, is_root=True)
    stats.leaf_evals_final_iter = stats.leaf_evals
    stats.elapsed_ns = time.perf_counter_ns() - t0
    return SearchResult(value, best[0], stats, leaves)
