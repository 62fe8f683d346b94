"""Strategies on uniform synthetic trees.

A strategy fixes one child at every MAX node it reaches and keeps every child
of the MIN nodes it reaches; its value is its smallest leaf. The best strategy
value equals the minimax value, and any single leaf upper-bounds every
strategy that contains it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Mapping

from .engines.classic import minimax
from .game.synthetic import DeweyPath, SyntheticGame, SyntheticTree

STRATEGY_LIMIT = 10**6


class EnumerationGuardError(ValueError):
    pass


@dataclass(frozen=True)
class Strategy:
    leaf_paths: frozenset[DeweyPath]
    move_choices: Mapping[DeweyPath, int] = field(hash=False, compare=False)


def strategy_count(tree: SyntheticTree) -> int:
    count = 1
    for level in range(tree.d - 1, -1, -1):
        count = tree.w * count if level % 2 == 0 else count**tree.w
    return count


def enumerate_strategies(tree: SyntheticTree, limit: int = STRATEGY_LIMIT) -> list[Strategy]:
    n = strategy_count(tree)
    if n > limit:
        raise EnumerationGuardError(f"{n} strategies exceed the enumeration guard of {limit}")
    w, d = tree.w, tree.d

    def below(path: DeweyPath) -> list[tuple[tuple[DeweyPath, ...], tuple]]:
        if len(path) == d:
            return [((path,), ())]
        kids = [below(path + (i,)) for i in range(w)]
        if len(path) % 2 == 0:
            return [(leaves, ((path, i),) + choices) for i, sub in enumerate(kids) for leaves, choices in sub]
        out = []
        for combo in product(*kids):
            leaves = tuple(p for part in combo for p in part[0])
            choices = tuple(c for part in combo for c in part[1])
            out.append((leaves, choices))
        return out

    return [Strategy(frozenset(leaves), dict(choices)) for leaves, choices in below(())]


def strategy_value(tree: SyntheticTree, strategy: Strategy) -> int:
    return min(tree.leaf_value(p) for p in strategy.leaf_paths)


def cluster_cover(tree: SyntheticTree) -> set[DeweyPath]:
    """Leaves reached by taking every MAX child and the first MIN child."""
    frontier: list[DeweyPath] = [()]
    for level in range(tree.d):
        if level % 2 == 0:
            frontier = [p + (i,) for p in frontier for i in range(tree.w)]
        else:
            frontier = [p + (0,) for p in frontier]
    return set(frontier)


@dataclass
class TheoremCheck:
    best_strategy_value: int
    minimax_value: int
    strategies: int
    bound_violations: int

    @property
    def holds(self) -> bool:
        return self.best_strategy_value == self.minimax_value and self.bound_violations == 0


def strategy_theorem(tree: SyntheticTree, limit: int = STRATEGY_LIMIT) -> TheoremCheck:
    strategies = enumerate_strategies(tree, limit)
    values = [strategy_value(tree, s) for s in strategies]
    violations = sum(
        1 for s, v in zip(strategies, values) for p in s.leaf_paths if tree.leaf_value(p) < v
    )
    game = SyntheticGame(tree)
    mm = minimax(game, game.root, tree.d).value
    return TheoremCheck(max(values), mm, len(strategies), violations)


def check_strategy_theorem(tree: SyntheticTree, limit: int = STRATEGY_LIMIT) -> bool:
    return strategy_theorem(tree, limit).holds
