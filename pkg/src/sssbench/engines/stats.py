from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


class NodeBudgetExceeded(RuntimeError):
    """A search evaluated more leaves than its budget allows."""


@dataclass
class SearchStats:
    leaf_evals: int = 0
    leaf_evals_final_iter: int = 0
    interior_expansions: int = 0
    tt_probes: int = 0
    tt_hits: int = 0
    tt_stores: int = 0
    open_peak: int = 0
    gamma_iterations: int = 0
    elapsed_ns: int = 0


@dataclass
class SearchResult:
    value: int
    best_move: Any
    stats: SearchStats
    # evaluated leaf states in evaluation order, when requested
    leaves: list | None = None
    # MT-SSS* test values of the final deepening iteration
    gammas: list[int] = field(default_factory=list)
