"""Exact seed-mutation engine for cluster algebras.

Core surfaces: exact semifield arithmetic (``semifield``), seeds and
mutation rules (``seeds``), periodicity verdicts (``periodicity``),
mutation schedules with their T/Y-systems (``tysystems``), dilogarithm
verification (``dilog``), built-in examples (``catalog``), and the
CLI/HTTP front doors (``cli``, ``service``).
"""

from .catalog import entry_names, get_entry
from .periodicity import (
    NuPeriodSpec,
    PeriodVerdict,
    check_matrix_period,
    check_seed_period_symbolic,
    check_seed_period_tropical,
)
from .seeds import ExchangeMatrix, PrincipalSeed, Quiver, SymbolicSeed, apply_sequence
from .semifield import SFRational, SparsePoly, TropMonomial

__all__ = [
    "ExchangeMatrix",
    "NuPeriodSpec",
    "PeriodVerdict",
    "PrincipalSeed",
    "Quiver",
    "SFRational",
    "SparsePoly",
    "SymbolicSeed",
    "TropMonomial",
    "apply_sequence",
    "check_matrix_period",
    "check_seed_period_symbolic",
    "check_seed_period_tropical",
    "entry_names",
    "get_entry",
]
