from typing import Optional

from ..config import Budgets, Settings
from ..ensembles.expr import EnsembleExpr
from ..ensembles.tables import AcwdTable, SplitAcwdTensor
from .full_syndrome import FullSyndromeEvaluation
from .row_symmetric import RowSymmetricEvaluation


class EnsembleEvaluator(FullSyndromeEvaluation, RowSymmetricEvaluation):
    """
    Exact ACWDs of ensemble expressions.

    One evaluator keeps one memo; reuse it across queries on related
    expressions so shared subtrees are evaluated once.
    """

    def __init__(self, budgets: Optional[Budgets] = None, settings: Optional[Settings] = None):
        super().__init__(budgets=budgets, settings=settings)

    def evaluate(self, expr: EnsembleExpr):
        """
        The most compact exact result for expr: an AcwdTable when expr is row
        symmetric, otherwise its split syndrome tensor, otherwise the full
        syndrome table (as a tensor over single-row parts).
        """
        if expr.row_symmetric:
            return self.table(expr)
        if self.split_partition(expr) is not None:
            return self.split_tensor(expr)
        return self.split_tensor_from_syndromes(expr)

    def split_tensor_from_syndromes(self, expr: EnsembleExpr) -> SplitAcwdTensor:
        """Full syndrome table laid out as a tensor over m one-row parts."""
        table = self.syndrome_table(expr)
        partition = (1,) * expr.m
        entries = {}
        for w, row in enumerate(table):
            for s, value in enumerate(row):
                if value:
                    entries[(w, tuple((s >> i) & 1 for i in range(expr.m)))] = value
        return SplitAcwdTensor(expr.n, partition, entries)


def acwd_table(expr: EnsembleExpr, budgets: Optional[Budgets] = None) -> AcwdTable:
    """Shortcut for EnsembleEvaluator(budgets).table(expr)."""
    return EnsembleEvaluator(budgets=budgets).table(expr)
