"""Exact min-plus matrix toolkit: tropical determinants, (symmetric) tropical rank,
determinantal prevarieties, local cell dimensions and dimension-gap bookkeeping."""

from .assignment import DetResult, enumerate_minimizing, is_sym_singular, is_trop_singular, tropdet
from .cells import CellResult, EquationSystem, cell_dimension, minor_equations
from .constructions import (
    append_combination_col,
    append_combination_row,
    border_PM,
    builtin,
    lemma1_coefficients,
    separating_coefficients,
    sym_append,
    sym_border_PM,
)
from .core import SubIndex, TropMatrix, parse_matrix, serialize_matrix, submatrix
from .rank import RankResult, in_prevariety, rank_oracle, symmetric_tropical_rank, tropical_rank
from .theory import (
    GapReport,
    Verdict,
    is_basis_standard,
    is_basis_symmetric,
    prevariety_lower_bound_standard,
    prevariety_lower_bound_symmetric,
    variety_dim_standard,
    variety_dim_symmetric,
)
from .tropoly import TropPoly, evaluate, generate_minors, in_hypersurface, membership_via_minors, parse_poly

__version__ = "0.1.0"
