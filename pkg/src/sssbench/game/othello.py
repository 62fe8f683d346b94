"""Othello-Reversi on two 64-bit occupancy masks.

Squares are numbered ``rank * 8 + file`` with a1 = 0 and h8 = 63. Passing is
an explicit move (:data:`PASS`) so that every ply is one tree edge.
"""

from __future__ import annotations

import enum
import random
from functools import lru_cache
from typing import NamedTuple

FULL = 0xFFFF_FFFF_FFFF_FFFF
NOT_EDGE_FILES = 0x7E7E_7E7E_7E7E_7E7E
CORNERS = (1 << 0) | (1 << 7) | (1 << 56) | (1 << 63)

PASS = 64

# (shift, mask applied to the opponent discs a line may run through)
_DIRECTIONS = (
    (1, NOT_EDGE_FILES),
    (-1, NOT_EDGE_FILES),
    (8, FULL),
    (-8, FULL),
    (9, NOT_EDGE_FILES),
    (-9, NOT_EDGE_FILES),
    (7, NOT_EDGE_FILES),
    (-7, NOT_EDGE_FILES),
)

CORNER_WEIGHT = 100
MOBILITY_WEIGHT = 10
DISC_WEIGHT = 1
TERMINAL_SCALE = 1_000

ZOBRIST_SEED = 0x5EED_07E1_1000


class IllegalMoveError(ValueError):
    """Raised when a move not in ``legal_moves`` is applied."""


class PositionParseError(ValueError):
    pass


class Color(enum.IntEnum):
    BLACK = 0
    WHITE = 1

    def opposite(self) -> "Color":
        return Color(1 - self)


class OthelloBoard(NamedTuple):
    black: int
    white: int
    side_to_move: Color

    def own_and_opp(self) -> tuple[int, int]:
        if self.side_to_move is Color.BLACK:
            return self.black, self.white
        return self.white, self.black


@lru_cache(maxsize=1 << 18)
def move_mask(own: int, opp: int) -> int:
    """Bitmask of squares where the owner of ``own`` may place a disc."""
    empty = ~(own | opp) & FULL
    moves = 0
    for s, mask in _DIRECTIONS:
        inner = opp & mask
        if s > 0:
            t = inner & (own << s)
            t |= inner & (t << s)
            t |= inner & (t << s)
            t |= inner & (t << s)
            t |= inner & (t << s)
            t |= inner & (t << s)
            moves |= empty & (t << s)
        else:
            r = -s
            t = inner & (own >> r)
            t |= inner & (t >> r)
            t |= inner & (t >> r)
            t |= inner & (t >> r)
            t |= inner & (t >> r)
            t |= inner & (t >> r)
            moves |= empty & (t >> r)
    return moves & FULL


def flips(own: int, opp: int, square: int) -> int:
    """Discs flipped by placing on ``square``; 0 if the move flips nothing."""
    bit = 1 << square
    if (own | opp) & bit:
        return 0
    result = 0
    for s, mask in _DIRECTIONS:
        inner = opp & mask
        line = 0
        if s > 0:
            x = (bit << s) & inner
            while x:
                line |= x
                x = (x << s) & inner
            if line and ((line.bit_length() - 1 + s) < 64) and own >> (line.bit_length() - 1 + s) & 1:
                result |= line
        else:
            r = -s
            x = (bit >> r) & inner
            while x:
                line |= x
                x = (x >> r) & inner
            if line and own & ((line & -line) >> r):
                result |= line
    return result


# _BYTE_SQUARES[b][v]: squares set in byte b of a mask whose byte b equals v
_BYTE_SQUARES = [[tuple(8 * b + i for i in range(8) if v >> i & 1) for v in range(256)] for b in range(8)]


def _squares(mask: int) -> list[int]:
    out: list[int] = []
    for table in _BYTE_SQUARES:
        if not mask:
            break
        out += table[mask & 0xFF]
        mask >>= 8
    return out


def initial_board() -> OthelloBoard:
    return OthelloBoard(
        black=(1 << 28) | (1 << 35),
        white=(1 << 27) | (1 << 36),
        side_to_move=Color.BLACK,
    )


@lru_cache(maxsize=1 << 18)
def _legal_moves(black: int, white: int, side: Color) -> tuple[int, ...]:
    own, opp = (black, white) if side is Color.BLACK else (white, black)
    mine = move_mask(own, opp)
    if mine:
        return tuple(_squares(mine))
    if move_mask(opp, own):
        return (PASS,)
    return ()


def legal_moves(board: OthelloBoard) -> list[int]:
    """Ascending squares; ``[PASS]`` if only the opponent can move; ``[]`` at game over."""
    return list(_legal_moves(board.black, board.white, board.side_to_move))


def apply_move(board: OthelloBoard, move: int) -> OthelloBoard:
    return _apply(board.black, board.white, board.side_to_move, move)


@lru_cache(maxsize=1 << 18)
def _apply(black: int, white: int, side: Color, move: int) -> OthelloBoard:
    if move == PASS:
        if _legal_moves(black, white, side) != (PASS,):
            raise IllegalMoveError("pass is only legal when the mover has no flipping move")
        return OthelloBoard(black, white, side.opposite())
    if not 0 <= move < 64:
        raise IllegalMoveError(f"square out of range: {move}")
    own, opp = (black, white) if side is Color.BLACK else (white, black)
    flipped = flips(own, opp, move)
    if not flipped:
        raise IllegalMoveError(f"{square_name(move)} flips nothing")
    own |= flipped | (1 << move)
    opp &= ~flipped
    if side is Color.BLACK:
        return OthelloBoard(own, opp, Color.WHITE)
    return OthelloBoard(opp, own, Color.BLACK)


def is_terminal(board: OthelloBoard) -> bool:
    return not _legal_moves(board.black, board.white, board.side_to_move)


@lru_cache(maxsize=1 << 18)
def _evaluate_black(black: int, white: int, side: Color) -> int:
    if not _legal_moves(black, white, side):
        return (black.bit_count() - white.bit_count()) * TERMINAL_SCALE
    corners = (black & CORNERS).bit_count() - (white & CORNERS).bit_count()
    mobility = move_mask(black, white).bit_count() - move_mask(white, black).bit_count()
    discs = black.bit_count() - white.bit_count()
    return CORNER_WEIGHT * corners + MOBILITY_WEIGHT * mobility + DISC_WEIGHT * discs


def evaluate(board: OthelloBoard, perspective: Color) -> int:
    """Corner, mobility and disc differentials; disc differential x 1000 at game over."""
    v = _evaluate_black(board.black, board.white, board.side_to_move)
    return v if perspective is Color.BLACK else -v


def _zobrist_tables() -> tuple[list[list[list[int]]], int]:
    rng = random.Random(ZOBRIST_SEED)
    codes = [[rng.getrandbits(64) for _ in range(64)] for _ in range(2)]
    side_code = rng.getrandbits(64)
    # per colour, per byte of the mask, per byte value: XOR of the square codes
    tables = []
    for color in range(2):
        per_byte = []
        for b in range(8):
            row = [0] * 256
            for value in range(1, 256):
                low = value & -value
                sq = b * 8 + low.bit_length() - 1
                row[value] = row[value ^ low] ^ codes[color][sq]
            per_byte.append(row)
        tables.append(per_byte)
    return tables, side_code


_ZOBRIST, ZOBRIST_WHITE_TO_MOVE = _zobrist_tables()


def zobrist_key(board: OthelloBoard) -> int:
    return _zobrist(board.black, board.white, board.side_to_move)


@lru_cache(maxsize=1 << 18)
def _zobrist(black: int, white: int, side: Color) -> int:
    key = ZOBRIST_WHITE_TO_MOVE if side is Color.WHITE else 0
    tb, tw = _ZOBRIST
    for b in range(8):
        key ^= tb[b][(black >> (8 * b)) & 0xFF] ^ tw[b][(white >> (8 * b)) & 0xFF]
    return key


def square_name(square: int) -> str:
    if square == PASS:
        return "pass"
    return "abcdefgh"[square % 8] + str(square // 8 + 1)


def parse_square(text: str) -> int:
    text = text.strip().lower()
    if text == "pass":
        return PASS
    if len(text) != 2 or text[0] not in "abcdefgh" or text[1] not in "12345678":
        raise PositionParseError(f"bad square: {text!r}")
    return (int(text[1]) - 1) * 8 + "abcdefgh".index(text[0])


def format_position(board: OthelloBoard) -> str:
    cells = []
    for sq in range(64):
        bit = 1 << sq
        cells.append("X" if board.black & bit else "O" if board.white & bit else "-")
    return "".join(cells) + " " + ("X" if board.side_to_move is Color.BLACK else "O")


def parse_position(text: str) -> OthelloBoard:
    """Parse ``64 x {X,O,-}`` (a1 first), a space, then ``X`` or ``O`` to move."""
    text = text.rstrip("\r\n")
    if len(text) != 66 or text[64] != " ":
        raise PositionParseError(f"expected 66 characters, got {len(text)}")
    black = white = 0
    for sq, ch in enumerate(text[:64]):
        if ch == "X":
            black |= 1 << sq
        elif ch == "O":
            white |= 1 << sq
        elif ch != "-":
            raise PositionParseError(f"bad cell {ch!r} at offset {sq}")
    if text[65] not in "XO":
        raise PositionParseError(f"bad side to move {text[65]!r}")
    return OthelloBoard(black, white, Color.BLACK if text[65] == "X" else Color.WHITE)


def swap_colors(board: OthelloBoard) -> OthelloBoard:
    return OthelloBoard(board.white, board.black, board.side_to_move.opposite())


def _transform_square(sq: int, sym: int) -> int:
    r, f = divmod(sq, 8)
    if sym & 4:
        r, f = f, r
    if sym & 1:
        f = 7 - f
    if sym & 2:
        r = 7 - r
    return r * 8 + f


def transform_mask(mask: int, sym: int) -> int:
    """Apply one of the 8 board symmetries (0 = identity) to a square mask."""
    out = 0
    for sq in _squares(mask):
        out |= 1 << _transform_square(sq, sym)
    return out


def transform_board(board: OthelloBoard, sym: int) -> OthelloBoard:
    return OthelloBoard(transform_mask(board.black, sym), transform_mask(board.white, sym), board.side_to_move)


def transform_move(move: int, sym: int) -> int:
    return move if move == PASS else _transform_square(move, sym)


class OthelloGame:
    """Adapter exposing Othello to the search engines."""

    def moves(self, board: OthelloBoard) -> tuple[int, ...]:
        return _legal_moves(board.black, board.white, board.side_to_move)

    def evaluate(self, board: OthelloBoard, perspective: Color) -> int:
        v = _evaluate_black(board.black, board.white, board.side_to_move)
        return v if perspective is Color.BLACK else -v

    def apply(self, board: OthelloBoard, move: int) -> OthelloBoard:
        return _apply(board.black, board.white, board.side_to_move, move)

    is_terminal = staticmethod(is_terminal)

    def key(self, board: OthelloBoard) -> int:
        return _zobrist(board.black, board.white, board.side_to_move)

    def to_move(self, board: OthelloBoard) -> Color:
        return board.side_to_move

    format_move = staticmethod(square_name)
