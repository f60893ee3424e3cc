from fractions import Fraction
from itertools import accumulate
from math import prod
from typing import List, Optional, Sequence, Tuple

from ..ensembles import closed_forms, combinators
from ..ensembles.expr import Base, ColShuffle, Concat, EnsembleExpr, RowShuffle, Stack, validate_type1, validate_type2
from ..ensembles.params import Bipartite, ConstantRow, Gallager
from ..ensembles.tables import AcwdTable, SplitAcwdTensor
from ..exceptions import BudgetError, ParameterError, SymmetryError
from .base import BaseEvaluator

Partition = Tuple[int, ...]


def _cuts(partition: Sequence[int]) -> frozenset:
    return frozenset(accumulate(partition))


def common_refinement(partitions: Sequence[Partition]) -> Partition:
    """Coarsest row partition refining every given partition of the same m."""
    cuts = sorted(frozenset().union(*(_cuts(p) for p in partitions)))
    out, last = [], 0
    for c in cuts:
        out.append(c - last)
        last = c
    return tuple(out)


def coarsen(fine: Partition, coarse: Partition, sigmas: Sequence[int]) -> Tuple[int, ...]:
    """Sum part weights of `fine` into the parts of `coarse`, which fine must refine."""
    if not _cuts(coarse) <= _cuts(fine):
        raise ParameterError(f"partition {fine} does not refine {coarse}")
    out, acc, pos = [], 0, 0
    bounds = iter(accumulate(coarse))
    bound = next(bounds)
    for size, s in zip(fine, sigmas):
        acc += s
        pos += size
        if pos == bound:
            out.append(acc)
            acc = 0
            bound = next(bounds, None)
    return tuple(out)


class RowSymmetricEvaluation(BaseEvaluator):
    """
    Evaluation through syndrome weights: the row symmetric B~_w(sigma) and the
    split syndrome form C~_w(sigma_1, ..., sigma_u). Type I and type II
    combined ensembles fold their components here.
    """

    # ---------- split forms ----------
    def split_partition(self, expr: EnsembleExpr) -> Optional[Partition]:
        """
        Natural row partition of expr's split syndrome form, or None when the
        ACWD is only known as a function of the full syndrome.
        """
        return self._memoized(("partition", expr), lambda: self._compute_partition(expr))

    def _compute_partition(self, node: EnsembleExpr) -> Optional[Partition]:
        if node.row_symmetric:
            return (node.m,)
        if isinstance(node, Base):
            return node.params.tiers if isinstance(node.params, Gallager) else None
        if isinstance(node, ColShuffle):
            return self.split_partition(node.child)
        if isinstance(node, Stack):
            parts = [self.split_partition(c) for c in node.children]
            if any(p is None for p in parts):
                return None
            if sum(not c.column_symmetric for c in node.children) > 1:
                return None
            return tuple(size for p in parts for size in p)
        if isinstance(node, Concat):
            parts = [self.split_partition(c) for c in node.children]
            if any(p is None for p in parts):
                return None
            return common_refinement(parts)
        return None

    def _split_value(self, node: EnsembleExpr, partition: Partition, sigmas: Tuple[int, ...], w: int) -> Fraction:
        natural = self.split_partition(node)
        if partition != natural:
            sigmas = coarsen(partition, natural, sigmas)
        return self._memoized(("split", node, sigmas, w), lambda: self._compute_split(node, natural, sigmas, w))

    def _compute_split(self, node: EnsembleExpr, natural: Partition, sigmas: Tuple[int, ...], w: int) -> Fraction:
        if node.row_symmetric:
            return self._row_symmetric_value(node, sigmas[0], w)
        if isinstance(node, Base):
            p = node.params
            return closed_forms.gallager_acwd_from_tier_weights(p.j, p.k, p.n, p.m, sigmas, w)
        if isinstance(node, ColShuffle):
            return self._split_value(node.child, natural, sigmas, w)
        if isinstance(node, Stack):
            values, pos = [], 0
            for child in node.children:
                child_part = self.split_partition(child)
                chunk = sigmas[pos : pos + len(child_part)]
                pos += len(child_part)
                values.append(self._split_value(child, child_part, chunk, w))
            return combinators.stack_product(values, node.n, w)
        if isinstance(node, Concat) and len(node.children) == 1:
            return self._split_value(node.children[0], natural, sigmas, w)
        if isinstance(node, Concat):
            head = node.prefix(len(node.children) - 1)
            last = node.children[-1]
            return combinators.split_form_concat_acwd(
                lambda sg, wa: self._split_value(head, natural, sg, wa),
                lambda sg, wb: self._split_value(last, natural, sg, wb),
                natural,
                head.n,
                last.n,
                sigmas,
                w,
            )
        raise SymmetryError("node has no split syndrome form", node)

    def split_acwd(
        self, expr: EnsembleExpr, sigmas: Sequence[int], w: int, partition: Optional[Sequence[int]] = None
    ) -> Fraction:
        """
        C~_w(sigma_1, ..., sigma_u) over `partition`, which defaults to the
        natural partition of expr and may refine it.
        """
        natural = self.split_partition(expr)
        if natural is None:
            raise SymmetryError("expression has no split syndrome form", expr)
        partition = tuple(partition) if partition is not None else natural
        if sum(partition) != expr.m:
            raise ParameterError(f"partition {partition} does not sum to m={expr.m}")
        sigmas = tuple(sigmas)
        if len(sigmas) != len(partition):
            raise ParameterError(f"expected {len(partition)} part weights, got {len(sigmas)}")
        for size, s in zip(partition, sigmas):
            if not 0 <= s <= size:
                raise ParameterError(f"part weight {s} outside [0, {size}]")
        self._check_weight(expr, w)
        return self._split_value(expr, partition, sigmas, w)

    def split_tensor(self, expr: EnsembleExpr, partition: Optional[Sequence[int]] = None) -> SplitAcwdTensor:
        natural = self.split_partition(expr)
        if natural is None:
            raise SymmetryError("expression has no split syndrome form", expr)
        partition = tuple(partition) if partition is not None else natural
        cells = prod(size + 1 for size in partition)
        if cells > 1 << self.budgets.max_syndrome_bits:
            raise BudgetError(f"split tensor over {partition} has {cells} cells per weight")

        empty = SplitAcwdTensor(expr.n, partition, {})
        grid = list(empty.sigma_grid())

        def row(w: int) -> List[Fraction]:
            return [self._split_value(expr, partition, sg, w) for sg in grid]

        rows = self._fill(range(expr.n + 1), row, desc="split tensor")
        entries = {
            (w, sg): value for w in range(expr.n + 1) for sg, value in zip(grid, rows[w]) if value
        }
        return SplitAcwdTensor(expr.n, partition, entries)

    # ---------- row symmetric form ----------
    def _row_symmetric_value(self, node: EnsembleExpr, sigma: int, w: int) -> Fraction:
        return self._memoized(("rowsym", node, sigma, w), lambda: self._compute_row_symmetric(node, sigma, w))

    def _compute_row_symmetric(self, node: EnsembleExpr, sigma: int, w: int) -> Fraction:
        if isinstance(node, Base):
            p = node.params
            if isinstance(p, Bipartite):
                return closed_forms.bipartite_acwd(p.j, p.k, p.n, p.m, sigma, w)
            if isinstance(p, ConstantRow):
                return closed_forms.constant_row_acwd_by_weight(p.k, p.n, p.m, sigma, w)
        elif isinstance(node, (ColShuffle, Stack, Concat)) and len(node.children) == 1:
            return self._row_symmetric_value(node.children[0], sigma, w)
        elif isinstance(node, Concat):
            head = node.prefix(len(node.children) - 1)
            last = node.children[-1]
            return combinators.concat_row_symmetric_acwd(
                lambda s, wa: self._row_symmetric_value(head, s, wa),
                lambda s, wb: self._row_symmetric_value(last, s, wb),
                node.m,
                head.n,
                last.n,
                sigma,
                w,
            )
        elif isinstance(node, RowShuffle):
            return self._row_shuffled_value(node, sigma, w)
        raise SymmetryError("node is not row symmetric", node)

    def _row_shuffled_value(self, node: RowShuffle, sigma: int, w: int) -> Fraction:
        child = node.child
        if child.row_symmetric:
            return self._row_symmetric_value(child, sigma, w)
        if isinstance(child, Base) and isinstance(child.params, Gallager):
            p = child.params
            return closed_forms.row_shuffled_gallager_acwd(p.j, p.k, p.n, p.m, sigma, w)
        if isinstance(child, Stack) and all(c.row_symmetric and c.column_symmetric for c in child.children):
            return combinators.stacked_row_shuffled_acwd(
                [(lambda s, wt, c=c: self._row_symmetric_value(c, s, wt)) for c in child.children],
                child.row_sizes,
                child.n,
                sigma,
                w,
            )
        partition = self.split_partition(child)
        if partition is not None:
            return combinators.split_row_shuffle_acwd(
                lambda sg, wt: self._split_value(child, partition, sg, wt), partition, sigma, w
            )
        self._require_full_syndrome(child, "row shuffle of an unstructured ensemble")
        return combinators.row_shuffle_acwd(lambda s, wt: self._full_value(child, s, wt), child.m, sigma, w)

    def row_symmetric_acwd(self, expr: EnsembleExpr, sigma: int, w: int) -> Fraction:
        """B~_w(sigma) of a row symmetric expression."""
        if not expr.row_symmetric:
            raise SymmetryError("row symmetric ACWD requested for an expression that is not row symmetric", expr)
        self._check_sigma(expr, sigma)
        self._check_weight(expr, w)
        return self._row_symmetric_value(expr, sigma, w)

    def table(self, expr: EnsembleExpr) -> AcwdTable:
        """Whole B~ table of a row symmetric expression, filled row by row on the worker pool."""
        if not expr.row_symmetric:
            raise SymmetryError("ACWD table requested for an expression that is not row symmetric", expr)
        self.logger.debug(f"Filling {expr.n + 1} x {expr.m + 1} table for {expr}")

        def row(w: int) -> List[Fraction]:
            return [self._row_symmetric_value(expr, sigma, w) for sigma in range(expr.m + 1)]

        rows = self._fill(range(expr.n + 1), row, desc="ACWD table")
        return AcwdTable.from_rows(expr.n, expr.m, self._ordered(rows, expr.n + 1))

    def split_weight_acwd(self, expr: Concat, sigma: int, w1: int, w2: int) -> Fraction:
        """
        B~_{w1,w2}(sigma) of a row symmetric concatenation: w1 is the weight on
        all components but the last, w2 the weight on the last one.
        """
        if not isinstance(expr, Concat) or len(expr.children) < 2:
            raise SymmetryError("split weight ACWD needs a concatenation of at least two components", expr)
        if not expr.row_symmetric:
            raise SymmetryError("split weight ACWD needs row symmetric components", expr)
        self._check_sigma(expr, sigma)
        head = expr.prefix(len(expr.children) - 1)
        last = expr.children[-1]
        if not (0 <= w1 <= head.n and 0 <= w2 <= last.n):
            return Fraction(0)
        return combinators.split_weight_row_symmetric_acwd(
            lambda s, wa: self._row_symmetric_value(head, s, wa),
            lambda s, wb: self._row_symmetric_value(last, s, wb),
            expr.m,
            sigma,
            w1,
            w2,
        )

    # ---------- combined ensembles ----------
    def type1_acwd(self, expr: EnsembleExpr, sigma: int, w: int) -> Fraction:
        labels = validate_type1(expr)
        self.logger.debug(f"Type I components: {labels}")
        return self.row_symmetric_acwd(expr, sigma, w)

    def type1_table(self, expr: EnsembleExpr) -> AcwdTable:
        validate_type1(expr)
        return self.table(expr)

    def type2_acwd(self, expr: EnsembleExpr, sigmas: Sequence[int], w: int) -> Fraction:
        partition = validate_type2(expr)
        return self.split_acwd(expr, sigmas, w, partition=partition)

    def type2_tensor(self, expr: EnsembleExpr) -> SplitAcwdTensor:
        partition = validate_type2(expr)
        self.logger.debug(f"Type II partition {partition} for {expr}")
        return self.split_tensor(expr, partition=partition)

    # provided by the full syndrome mixin
    def _full_value(self, node: EnsembleExpr, s: int, w: int) -> Fraction:
        raise NotImplementedError
