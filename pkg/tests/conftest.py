import random

import pytest

from sssbench.game.othello import Color, apply_move, initial_board, legal_moves

DIRS = [(dr, dc) for dr in (-1, 0, 1) for dc in (-1, 0, 1) if dr or dc]


def scan_moves(board, color):
    """Rule-by-rule legality scan on a row/column grid, independent of the bitboard code."""
    own = board.black if color == Color.BLACK else board.white
    opp = board.white if color == Color.BLACK else board.black

    def at(r, c, mask):
        return mask >> (r * 8 + c) & 1

    out = []
    for r in range(8):
        for c in range(8):
            if at(r, c, own) or at(r, c, opp):
                continue
            for dr, dc in DIRS:
                rr, cc, seen = r + dr, c + dc, 0
                while 0 <= rr < 8 and 0 <= cc < 8 and at(rr, cc, opp):
                    rr, cc, seen = rr + dr, cc + dc, seen + 1
                if seen and 0 <= rr < 8 and 0 <= cc < 8 and at(rr, cc, own):
                    out.append(r * 8 + c)
                    break
    return out


def playout(seed, plies=None):
    """Boards along a uniform-random game from the start position."""
    rng = random.Random(seed)
    b = initial_board()
    boards = [b]
    while plies is None or len(boards) <= plies:
        moves = legal_moves(b)
        if not moves:
            break
        b = apply_move(b, rng.choice(moves))
        boards.append(b)
    return boards


@pytest.fixture(scope="session")
def playout_boards():
    boards = []
    for seed in range(40):
        boards.extend(playout(seed))
    return boards


_ACCEPTANCE: list[str] = []


@pytest.fixture(scope="session")
def acceptance_log():
    """Collects one pass/fail line per acceptance criterion for the terminal summary."""
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
