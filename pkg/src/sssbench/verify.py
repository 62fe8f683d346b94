"""Property suites over seeded synthetic trees.

Each suite returns a :class:`PropertyReport`; ``run_verification`` bundles
them for the ``verify`` command and the acceptance tests.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

import numpy as np

from .engines.classic import alphabeta
from .engines.enhanced import mt_sss
from .engines.select import ENGINES, run_engine
from .engines.sss import sss_star
from .game.synthetic import SyntheticGame, SyntheticTree, gen_tree, tree_from_leaves
from .strategies import strategy_theorem

MAX_ORACLE_LEAVES = 65_536
DEFAULT_SEED = 20_240_601


def oracle_value(tree: SyntheticTree) -> int:
    """Minimax by reducing leaf levels with numpy; shares no code with the engines."""
    a = np.asarray(tree.leaves, dtype=np.int64)
    for level in range(tree.d - 1, -1, -1):
        a = a.reshape(-1, tree.w)
        a = a.max(axis=1) if level % 2 == 0 else a.min(axis=1)
    return int(a[0])


def max_depth_for(w: int, max_leaves: int = MAX_ORACLE_LEAVES) -> int:
    d = 0
    while w ** (d + 1) <= max_leaves:
        d += 1
    return d


def oracle_trees(count: int, seed: int = DEFAULT_SEED, widths=(2, 3, 4), max_depth: int | None = None,
                 max_leaves: int = MAX_ORACLE_LEAVES, ties: bool = False):
    """Deterministic stream of trees cycling through ``widths``.

    Depth is drawn uniformly from 1..max with ``w**d <= max_leaves``. With
    ``ties`` leaf values are folded into a few buckets so ties are common.
    """
    rng = random.Random(seed)
    for i in range(count):
        w = widths[i % len(widths)]
        top = max_depth_for(w, max_leaves)
        if max_depth is not None:
            top = min(top, max_depth)
        d = rng.randint(1, max(top, 1))
        tree = gen_tree(w, d, rng.getrandbits(64))
        if ties:
            tree = tree_from_leaves(w, d, [v % 3 for v in tree.leaves])
        yield tree


@dataclass
class PropertyReport:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def format(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        lines = [f"{status} {self.name}: {self.checked} checked, {len(self.failures)} failures"]
        lines += [f"    {n}" for n in self.notes]
        lines += [f"    ! {f}" for f in self.failures[:10]]
        return "\n".join(lines)


def check_oracle_equivalence(trees, engines=ENGINES) -> PropertyReport:
    rep = PropertyReport("oracle equivalence")
    for tree in trees:
        game = SyntheticGame(tree)
        want = oracle_value(tree)
        for e in engines:
            got = run_engine(e, game, game.root, tree.d).value
            if got != want:
                rep.failures.append(f"{e} on w={tree.w} d={tree.d} seed={tree.seed}: {got} != {want}")
        rep.checked += 1
    rep.notes.append(f"engines: {', '.join(engines)}")
    return rep


def check_dominance(trees) -> PropertyReport:
    """Leaves evaluated by SSS* are a subset of those evaluated by full-window alpha-beta."""
    rep = PropertyReport("Stockman dominance (SSS* leaves within alpha-beta leaves)")
    sss_total = ab_total = 0
    for tree in trees:
        game = SyntheticGame(tree)
        s = sss_star(game, game.root, tree.d, record_leaves=True)
        a = alphabeta(game, game.root, tree.d, record_leaves=True)
        extra = set(s.leaves) - set(a.leaves)
        if extra:
            rep.failures.append(f"w={tree.w} d={tree.d} seed={tree.seed}: {len(extra)} leaves outside alpha-beta's")
        sss_total += s.stats.leaf_evals
        ab_total += a.stats.leaf_evals
        rep.checked += 1
    rep.notes.append(f"total leaves: sss {sss_total}, ab {ab_total}")
    return rep


def check_strategy_theorem(trees) -> PropertyReport:
    rep = PropertyReport("strategy theorem (max over strategies of min leaf = minimax)")
    n_strategies = 0
    for tree in trees:
        t = strategy_theorem(tree)
        if t.best_strategy_value != oracle_value(tree):
            rep.failures.append(f"w={tree.w} d={tree.d} seed={tree.seed}: oracle disagrees")
        if not t.holds:
            rep.failures.append(
                f"w={tree.w} d={tree.d} seed={tree.seed}: best strategy {t.best_strategy_value}, "
                f"minimax {t.minimax_value}, {t.bound_violations} leaf-bound violations")
        n_strategies += t.strategies
        rep.checked += 1
    rep.notes.append(f"{n_strategies} strategies enumerated")
    return rep


def check_mt_equivalence(trees, per_tree: bool = False) -> PropertyReport:
    """SSS* and MT-SSS* agree in value; MT-SSS* test values strictly decrease."""
    rep = PropertyReport("SSS* = MT-SSS* (values equal, gamma strictly decreasing)")
    totals = [0, 0, 0]
    same_leaves = 0
    if per_tree:
        rep.notes.append("w d seed value leaves: sss mt_sss(textbook) mt_sss(enhanced)")
    for tree in trees:
        game = SyntheticGame(tree)
        s = sss_star(game, game.root, tree.d)
        plain = mt_sss(game, game.root, tree.d, deepening=False, ordering=False) if tree.d >= 1 else None
        enh = mt_sss(game, game.root, tree.d) if tree.d >= 1 else None
        for label, r in (("textbook", plain), ("enhanced", enh)):
            if r is None:
                continue
            if r.value != s.value:
                rep.failures.append(f"{label} mt_sss {r.value} != sss {s.value} on w={tree.w} d={tree.d} seed={tree.seed}")
            if any(b >= a for a, b in zip(r.gammas, r.gammas[1:])):
                rep.failures.append(f"{label} gamma sequence not strictly decreasing: {r.gammas}")
            if r.gammas and r.gammas[-1] != r.value:
                rep.failures.append(f"{label} final gamma {r.gammas[-1]} != value {r.value}")
        counts = (s.stats.leaf_evals, plain.stats.leaf_evals if plain else 0, enh.stats.leaf_evals if enh else 0)
        for i, c in enumerate(counts):
            totals[i] += c
        same_leaves += counts[0] == counts[1]
        if per_tree:
            rep.notes.append(f"{tree.w} {tree.d} {tree.seed} {s.value} {counts[0]} {counts[1]} {counts[2]}")
        rep.checked += 1
    rep.notes.append(f"total leaves: sss {totals[0]}, mt_sss textbook {totals[1]}, mt_sss enhanced {totals[2]}")
    rep.notes.append(f"trees where textbook MT-SSS* evaluated as many leaves as SSS*: {same_leaves}/{rep.checked}")
    return rep


def check_open_peak(trees, slack: float = 2.0) -> PropertyReport:
    """SSS* OPEN peak stays within ``slack * w**ceil(d/2)``."""
    rep = PropertyReport(f"SSS* OPEN peak <= {slack:g} * w^ceil(d/2)")
    worst = 0.0
    peaks: dict[tuple[int, int], list[int]] = {}
    for tree in trees:
        game = SyntheticGame(tree)
        peak = sss_star(game, game.root, tree.d).stats.open_peak
        bound = tree.w ** math.ceil(tree.d / 2)
        worst = max(worst, peak / bound)
        peaks.setdefault((tree.w, tree.d), []).append(peak)
        if peak > slack * bound:
            rep.failures.append(f"w={tree.w} d={tree.d} seed={tree.seed}: peak {peak} > {slack:g} * {bound}")
        rep.checked += 1
    rep.notes.append(f"largest measured peak / w^ceil(d/2): {worst:.3f}")
    for (w, d), ps in sorted(peaks.items()):
        rep.notes.append(f"w={w} d={d}: {len(ps)} trees, peak min {min(ps)} max {max(ps)}, "
                         f"w^ceil(d/2) = {w ** math.ceil(d / 2)}")
    return rep


def run_verification(trees: int = 1000, seed: int = DEFAULT_SEED, max_depth: int | None = None,
                     ties: bool = False, per_tree: bool = False) -> list[PropertyReport]:
    oracle = list(oracle_trees(trees, seed, max_depth=max_depth))
    dominance = list(oracle_trees(trees // 2, seed, max_depth=max_depth, ties=ties))
    theorem_depth = 4 if max_depth is None else min(4, max_depth)
    theorem = list(oracle_trees(max(trees // 5, 1), seed + 1, widths=(2, 3), max_depth=theorem_depth))
    return [
        check_oracle_equivalence(oracle),
        check_dominance(dominance),
        check_strategy_theorem(theorem),
        check_mt_equivalence(oracle, per_tree=per_tree),
        check_open_peak(oracle),
    ]
