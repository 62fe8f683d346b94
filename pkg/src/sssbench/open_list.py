"""The SSS* OPEN list: a max-queue of ``<name, live/solved, bound>`` states."""

from __future__ import annotations

import enum
import heapq
from bisect import bisect_left, bisect_right, insort
from dataclasses import dataclass
from itertools import count
from typing import Any

from .game.base import Player

DeweyPath = tuple[int, ...]


class GammaError(RuntimeError):
    """The OPEN list was driven into an inconsistent state."""


class SssStatus(enum.Enum):
    LIVE = "LIVE"
    SOLVED = "SOLVED"


@dataclass(slots=True)
class SssState:
    path: DeweyPath
    status: SssStatus
    merit: int
    player: Player
    node: Any = None  # handle used to re-expand the node (board snapshot + parent link)

    def triple(self) -> tuple[DeweyPath, str, int]:
        return self.path, self.status.value, self.merit


class OpenList:
    """Max-priority queue keyed by merit; ties go to the leftmost path.

    With ``strict`` every push also rejects a path whose ancestor or
    descendant is queued.

    Removal by :meth:`purge_descendants` is lazy: purged heap entries stay in
    the heap and are skipped at pop time. A lexicographically sorted list of
    queued paths makes the descendants of any prefix one contiguous slice.
    """

    def __init__(self, strict: bool = False):
        self._heap: list[tuple[int, DeweyPath, int]] = []
        self._live: dict[DeweyPath, tuple[int, SssState]] = {}
        self._order: list[DeweyPath] = []
        self._seq = count()
        self.peak = 0
        self.strict = strict

    def __len__(self) -> int:
        return len(self._live)

    def __contains__(self, path) -> bool:
        return tuple(path) in self._live

    def __iter__(self):
        return (state for _, state in self._live.values())

    def push(self, state: SssState) -> None:
        path = state.path
        if path in self._live:
            raise GammaError(f"duplicate path {path} pushed onto OPEN")
        if self.strict:
            self.check_unrelated(path)
        seq = next(self._seq)
        self._live[path] = (seq, state)
        insort(self._order, path)
        heapq.heappush(self._heap, (-state.merit, path, seq))
        if len(self._live) > self.peak:
            self.peak = len(self._live)

    def queued_ancestor(self, path):
        for k in range(len(path)):
            if path[:k] in self._live:
                return path[:k]
        return None

    def check_unrelated(self, path) -> None:
        anc = self.queued_ancestor(path)
        if anc is not None:
            raise GammaError(f"path {path} pushed while its ancestor {anc} is on OPEN")
        i = bisect_right(self._order, path)
        if i < len(self._order) and self._order[i][:len(path)] == path:
            raise GammaError(f"path {path} pushed while its descendant {self._order[i]} is on OPEN")

    def pop_max(self) -> SssState:
        heap, live = self._heap, self._live
        while heap:
            _, path, seq = heapq.heappop(heap)
            entry = live.get(path)
            if entry is not None and entry[0] == seq:
                del live[path]
                order = self._order
                del order[bisect_left(order, path)]
                return entry[1]
        raise IndexError("pop from empty OPEN list")

    def purge_descendants(self, prefix) -> int:
        """Drop every state strictly below ``prefix``; returns how many were removed."""
        prefix = tuple(prefix)
        order = self._order
        lo = bisect_right(order, prefix)
        hi = bisect_left(order, prefix[:-1] + (prefix[-1] + 1,)) if prefix else len(order)
        doomed = order[lo:hi]
        del order[lo:hi]
        for p in doomed:
            del self._live[p]
        if len(self._heap) > 4 * len(self._live) + 64:
            self._heap = [(m, p, s) for m, p, s in self._heap if self._live.get(p, (None,))[0] == s]
            heapq.heapify(self._heap)
        return len(doomed)
