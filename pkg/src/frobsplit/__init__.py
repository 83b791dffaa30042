"""Cohomology tables and splitting of Frobenius pushforwards on projective space."""
from .bundle import FormalBundle, Line, Omega, Summand, normalize
from .cohomology import (
    CohomologyTable,
    bott_h,
    default_window,
    hset,
    hset_exact,
    rank_from_table,
    serre_dual_table,
    table,
)
from .exact_arith import binom, chi_line
from .frobenius import m_threshold, pullback_line, pushforward_table
from .splitting import (
    Decomposition,
    check_dagger,
    decompose,
    decompose_pushforward,
    klyachko_bound,
    pushforward_splitting,
)

__all__ = [
    "CohomologyTable",
    "Decomposition",
    "FormalBundle",
    "Line",
    "Omega",
    "Summand",
    "binom",
    "bott_h",
    "check_dagger",
    "chi_line",
    "decompose",
    "decompose_pushforward",
    "default_window",
    "hset",
    "hset_exact",
    "klyachko_bound",
    "pushforward_splitting",
    "m_threshold",
    "normalize",
    "pullback_line",
    "pushforward_table",
    "rank_from_table",
    "serre_dual_table",
    "table",
]
