from .expr import (
    Base,
    ColShuffle,
    Concat,
    EnsembleExpr,
    RowShuffle,
    Stack,
    bipartite,
    col_shuffle,
    concat,
    constant_row,
    gallager,
    row_shuffle,
    single_matrix,
    stack,
    validate_type1,
    validate_type2,
)
from .params import Bipartite, ConstantRow, EnsembleParams, Gallager, SingleMatrix
from .tables import AcwdTable, SplitAcwdTensor
