"""Shared game vocabulary: players, score bounds and the adapter protocol."""

from __future__ import annotations

import enum
from typing import Hashable, Protocol, Sequence

# Strictly above any reachable heuristic or terminal score.
INF = 1_000_000
MAX_HEURISTIC = 99_999
MAX_TERMINAL = 64_000


class Player(enum.Enum):
    MAX = "MAX"
    MIN = "MIN"

    def opposite(self) -> "Player":
        return Player.MIN if self is Player.MAX else Player.MAX


class GameAdapter(Protocol):
    """What every engine needs from a game.

    ``moves`` must return ``[]`` exactly when the state is terminal, and its
    order is the natural order engines fall back on. ``to_move`` returns an
    opaque side token; a node is a MAX node when its token equals the root's.
    """

    def moves(self, state) -> Sequence: ...

    def apply(self, state, move): ...

    def evaluate(self, state, perspective) -> int: ...

    def is_terminal(self, state) -> bool: ...

    def key(self, state) -> int: ...

    def to_move(self, state) -> Hashable: ...

    def format_move(self, move) -> str: ...


def player_of(game: GameAdapter, state, root_side) -> Player:
    return Player.MAX if game.to_move(state) == root_side else Player.MIN
