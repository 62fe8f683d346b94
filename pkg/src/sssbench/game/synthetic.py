"""Seeded uniform game trees with distinct integer leaves.

A node is addressed by ``(level, index)`` where ``index`` is its position
among the ``w**level`` nodes of that level; its Dewey path is the base-``w``
expansion of ``index``. The root is MAX and levels alternate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import accumulate

import numpy as np

MAX_LEAVES = 1 << 24

DeweyPath = tuple[int, ...]


@dataclass(frozen=True)
class SyntheticTree:
    w: int
    d: int
    seed: int
    leaves: tuple[int, ...] = field(repr=False)

    @property
    def leaf_count(self) -> int:
        return len(self.leaves)

    def leaf_value(self, path: DeweyPath) -> int:
        return self.leaves[path_to_index(path, self.w)]


def gen_tree(w: int, d: int, seed: int) -> SyntheticTree:
    if w < 1 or d < 0:
        raise ValueError(f"need w >= 1 and d >= 0, got w={w}, d={d}")
    if w**d > MAX_LEAVES:
        raise ValueError(f"tree too large: {w}^{d} leaves exceeds 2^24")
    rng = np.random.Generator(np.random.PCG64(seed & 0xFFFF_FFFF_FFFF_FFFF))
    leaves = rng.permutation(w**d)
    return SyntheticTree(w, d, seed, tuple(leaves.tolist()))


def tree_from_leaves(w: int, d: int, leaves) -> SyntheticTree:
    """Build a tree with explicit left-to-right leaf values (used in tests and traces)."""
    leaves = tuple(int(v) for v in leaves)
    if len(leaves) != w**d:
        raise ValueError(f"expected {w**d} leaves, got {len(leaves)}")
    return SyntheticTree(w, d, -1, leaves)


def path_to_index(path: DeweyPath, w: int) -> int:
    index = 0
    for i in path:
        index = index * w + i
    return index


def index_to_path(level: int, index: int, w: int) -> DeweyPath:
    out = []
    for _ in range(level):
        index, i = divmod(index, w)
        out.append(i)
    return tuple(reversed(out))


class SyntheticGame:
    """Adapter over a :class:`SyntheticTree`; states are ``(level, index)`` pairs.

    Interior nodes cut off by a shallower search are scored with the floor
    mean of the leaves beneath them, which gives iterative deepening an
    informative but imperfect ordering signal.
    """

    root = (0, 0)

    def __init__(self, tree: SyntheticTree):
        self.tree = tree
        self._w, self._d, self._leaves = tree.w, tree.d, tree.leaves
        self._children = tuple(range(tree.w))
        self._prefix = (0, *accumulate(tree.leaves))
        # level offsets keep keys unique across levels
        self._offsets = [(tree.w**k - 1) // (tree.w - 1) if tree.w > 1 else k for k in range(tree.d + 1)]

    def moves(self, state):
        return self._children if state[0] < self._d else ()

    def apply(self, state, move):
        return (state[0] + 1, state[1] * self._w + move)

    def evaluate(self, state, perspective) -> int:
        level, index = state
        if level == self._d:
            v = self._leaves[index]
        else:
            span = self._w ** (self._d - level)
            lo = index * span
            v = (self._prefix[lo + span] - self._prefix[lo]) // span
        return -v if perspective else v

    def is_terminal(self, state) -> bool:
        return state[0] == self.tree.d

    def key(self, state) -> int:
        return self._offsets[state[0]] + state[1]

    def to_move(self, state) -> int:
        return state[0] & 1

    def format_move(self, move) -> str:
        return str(move)

    def path(self, state) -> DeweyPath:
        return index_to_path(state[0], state[1], self.tree.w)
