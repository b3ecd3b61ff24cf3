"""Exact arithmetic for composite lacunary polynomials and their term bounds."""

from .bounds import (
    B1,
    L2Report,
    M_of,
    case1_check,
    exponent_chain_check,
    final_chain_check,
    l2_pipeline,
    lambda_,
    lemma1_check,
    nl_bound,
    quotient_step,
    twoL_chain_check,
)
from .decompose import (
    Decomposition,
    RadicalRoot,
    RatioRep,
    all_decompositions,
    assemble_ratio,
    decompose_at_degree,
    radical_root,
    verify_ratio,
)
from .harness import TrialConfig, TrialRecord, gen_instance, run_trials, verify_all
from .series import (
    TermShape,
    TruncSeries,
    enumerate_term_shapes,
    linear_dependence,
    match_target,
    pow_frac,
    puiseux_basis,
    term_value,
)
from .sparse_poly import (
    Instance,
    SparsePoly,
    compose,
    normalize_f,
    parse_poly,
    tilde_transform,
)
from .towers import Cmp, TowerInt, digit_count, tower, tower_cmp

__all__ = [
    "B1", "L2Report", "M_of", "case1_check", "exponent_chain_check", "final_chain_check",
    "l2_pipeline", "lambda_", "lemma1_check", "nl_bound", "quotient_step", "twoL_chain_check",
    "Decomposition", "RadicalRoot", "RatioRep", "all_decompositions", "assemble_ratio",
    "decompose_at_degree", "radical_root", "verify_ratio",
    "TrialConfig", "TrialRecord", "gen_instance", "run_trials", "verify_all",
    "TermShape", "TruncSeries", "enumerate_term_shapes", "linear_dependence", "match_target",
    "pow_frac", "puiseux_basis", "term_value",
    "Instance", "SparsePoly", "compose", "normalize_f", "parse_poly", "tilde_transform",
    "Cmp", "TowerInt", "digit_count", "tower", "tower_cmp",
]
