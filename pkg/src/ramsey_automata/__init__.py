"""Ramsey quantifiers over automatic structures: word, tree, and unranked relations."""
from .config import Budget, BudgetError, WitnessConfig
from .tree_apps import TreeRecQuery, gen_buchi_rec_tree, mondec_tree, rec_reach_tree
from .tree_ramsey import extract_tree_witness, has_infinite_clique_tree, ramsey_eval_tree
from .trees import TreeAutomaton
from .unranked import NUTA, ramsey_eval_unranked
from .word_apps import RecQuery, gen_buchi_rec, mondec_word, rec_reach
from .word_ramsey import CombWitness, extract_comb_witness, has_infinite_clique, ramsey_eval
from .words import BOT, AutomatonError, WordAutomaton

__all__ = [
    "BOT", "AutomatonError", "Budget", "BudgetError", "CombWitness", "NUTA", "RecQuery",
    "TreeAutomaton", "TreeRecQuery", "WitnessConfig", "WordAutomaton", "extract_comb_witness",
    "extract_tree_witness", "gen_buchi_rec", "gen_buchi_rec_tree", "has_infinite_clique",
    "has_infinite_clique_tree", "mondec_tree", "mondec_word", "ramsey_eval", "ramsey_eval_tree",
    "ramsey_eval_unranked", "rec_reach", "rec_reach_tree",
]
__version__ = "0.1.0"
