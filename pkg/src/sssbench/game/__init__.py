from .base import INF, MAX_HEURISTIC, MAX_TERMINAL, GameAdapter, Player, player_of
from .othello import (
    PASS,
    Color,
    IllegalMoveError,
    OthelloBoard,
    OthelloGame,
    PositionParseError,
    apply_move,
    evaluate,
    format_position,
    initial_board,
    is_terminal,
    legal_moves,
    parse_position,
    square_name,
    zobrist_key,
)
from .synthetic import DeweyPath, SyntheticGame, SyntheticTree, gen_tree, tree_from_leaves

__all__ = [
    "INF", "MAX_HEURISTIC", "MAX_TERMINAL", "GameAdapter", "Player", "player_of",
    "PASS", "Color", "IllegalMoveError", "OthelloBoard", "OthelloGame", "PositionParseError",
    "apply_move", "evaluate", "format_position", "initial_board", "is_terminal", "legal_moves",
    "parse_position", "square_name", "zobrist_key",
    "DeweyPath", "SyntheticGame", "SyntheticTree", "gen_tree", "tree_from_leaves",
]
