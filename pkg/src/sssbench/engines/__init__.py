from .classic import alphabeta, minimax
from .enhanced import HistoryTable, TTSearcher, alphabeta_enhanced, mt_sss
from .sss import StepRecord, gamma_step, root_state, sss_star
from .stats import NodeBudgetExceeded, SearchResult, SearchStats
from .select import ENGINES, pick_best_move, run_engine

__all__ = [
    "alphabeta", "minimax", "HistoryTable", "TTSearcher", "alphabeta_enhanced", "mt_sss",
    "StepRecord", "gamma_step", "root_state", "sss_star",
    "NodeBudgetExceeded", "SearchResult", "SearchStats",
    "ENGINES", "pick_best_move", "run_engine",
]
