__title__ = "py-ldpc-acwd"
__name__ = "ldpc_acwd"
__author__ = "ldpc-acwd developers"
__copyright__ = "Copyright (c) 2026 ldpc-acwd developers"
__license__ = "MIT License"
__description__ = "Exact average coset weight distributions of combined LDPC ensembles."
__maintainer__ = "ldpc-acwd developers"

from .__version__ import __version__
from .asymptotic import (
    NEG_INFINITY,
    BipartiteGrowth,
    agr_curve,
    agr_finite_n_check,
    binary_entropy,
    bipartite_agr,
    concat_agr,
    coset_weight_tail_bound,
    saddle_root,
    typical_coset_weight,
)
from .config import Budgets, Settings
from .ensembles import (
    AcwdTable,
    SplitAcwdTensor,
    bipartite,
    col_shuffle,
    concat,
    constant_row,
    gallager,
    row_shuffle,
    single_matrix,
    stack,
)
from .evaluation import EnsembleEvaluator, acwd_table
from .exceptions import AcwdError
