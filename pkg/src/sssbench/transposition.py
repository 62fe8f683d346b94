"""Fixed-capacity transposition table with two-sided value bounds."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .game.base import INF

DEFAULT_CAPACITY = 1 << 20


@dataclass(slots=True)
class TTEntry:
    key: int
    depth_remaining: int
    lower: int
    upper: int
    best_move: object
    epoch: int


class ProbeResult(NamedTuple):
    lower: int | None
    upper: int | None
    best_move: object

    @property
    def has_bounds(self) -> bool:
        return self.lower is not None


class TranspositionTable:
    """Single-level table indexed by ``key mod capacity``.

    Replacement is depth-preferred within an epoch; entries from an older
    epoch may always be overwritten. Re-storing the same key at the same
    depth intersects the bounds instead of replacing them.
    """

    def __init__(self, capacity: int = DEFAULT_CAPACITY):
        if capacity < 1 or capacity & (capacity - 1):
            raise ValueError(f"capacity must be a power of two, got {capacity}")
        self.capacity = capacity
        self._mask = capacity - 1
        # sparse stand-in for a fixed array of `capacity` slots
        self._slots: dict[int, TTEntry] = {}
        self.epoch = 0
        self.probes = 0
        self.hits = 0
        self.stores = 0

    def new_epoch(self) -> None:
        self.epoch += 1
        self.probes = self.hits = self.stores = 0

    def probe(self, key: int, depth_remaining: int, exact_depth: bool = False) -> ProbeResult | None:
        """Look up ``key``.

        Bounds are returned only when the stored depth covers the request
        (``>=``, or ``==`` with ``exact_depth``); the best move is returned on
        any full-key match.
        """
        self.probes += 1
        e = self._slots.get(key & self._mask)
        if e is None or e.key != key:
            return None
        if e.depth_remaining == depth_remaining or (not exact_depth and e.depth_remaining > depth_remaining):
            self.hits += 1
            return ProbeResult(e.lower, e.upper, e.best_move)
        return ProbeResult(None, None, e.best_move)

    def store(self, key: int, depth_remaining: int, lower: int, upper: int, best_move=None) -> bool:
        """Store bounds; returns whether the slot was written."""
        if not -INF <= lower <= upper <= INF:
            if lower > upper:
                raise ValueError(f"lower bound {lower} exceeds upper bound {upper}")
            raise ValueError("bounds outside [-INF, INF]")
        slot = key & self._mask
        e = self._slots.get(slot)
        if e is not None and e.key == key and e.depth_remaining == depth_remaining:
            lo = max(lower, e.lower)
            hi = min(upper, e.upper)
            if lo > hi:
                raise ValueError(f"intersected bounds are empty: ({lo}, {hi}) for key {key:#x}")
            e.lower, e.upper, e.epoch = lo, hi, self.epoch
            if best_move is not None:
                e.best_move = best_move
        elif e is None or e.epoch < self.epoch or depth_remaining >= e.depth_remaining:
            self._slots[slot] = TTEntry(key, depth_remaining, lower, upper, best_move, self.epoch)
        else:
            return False
        self.stores += 1
        return True

    def lookup(self, key: int) -> TTEntry | None:
        """Counted probe returning the raw entry on a full-key match.

        Callers that use its bounds should bump :attr:`hits` themselves.
        """
        self.probes += 1
        e = self._slots.get(key & self._mask)
        return e if e is not None and e.key == key else None

    def entry(self, key: int) -> TTEntry | None:
        e = self._slots.get(key & self._mask)
        return e if e is not None and e.key == key else None

    def entries(self):
        return iter(self._slots.values())

    def __len__(self) -> int:
        return len(self._slots)
