"""Engine registry keyed by the short names used on the command line and in CSV."""

from __future__ import annotations

from ..transposition import DEFAULT_CAPACITY
from .classic import alphabeta, minimax
from .enhanced import alphabeta_enhanced, mt_sss
from .sss import sss_star
from .stats import SearchResult

ENGINES = ("minimax", "ab", "ab_enhanced", "sss", "mt_sss")


class TerminalPositionError(ValueError):
    pass


def run_engine(name: str, game, root, depth: int, *, tt_capacity: int = DEFAULT_CAPACITY,
               node_budget=None, record_leaves: bool = False) -> SearchResult:
    common = dict(node_budget=node_budget, record_leaves=record_leaves)
    if name == "minimax":
        return minimax(game, root, depth, **common)
    if name == "ab":
        return alphabeta(game, root, depth, **common)
    if name == "ab_enhanced":
        return alphabeta_enhanced(game, root, depth, tt_capacity=tt_capacity, **common)
    if name == "sss":
        return sss_star(game, root, depth, **common)
    if name == "mt_sss":
        return mt_sss(game, root, depth, tt_capacity=tt_capacity, **common)
    raise KeyError(f"unknown engine {name!r}; choose from {', '.join(ENGINES)}")


def pick_best_move(game, root, depth: int, engine: str = "ab_enhanced", **kwargs):
    """A root move whose subtree value equals the root value."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if not game.moves(root):
        raise TerminalPositionError("no move to pick from a terminal position")
    return run_engine(engine, game, root, depth, **kwargs).best_move
