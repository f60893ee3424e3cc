from fractions import Fraction
from typing import List, Tuple

from ..ensembles import combinators
from ..ensembles.closed_forms import coset_count_matrix
from ..ensembles.expr import Base, ColShuffle, Concat, EnsembleExpr, Stack
from ..ensembles.params import SingleMatrix
from ..exceptions import BudgetError, ParameterError, SymmetryError
from ..poly import DensePoly, poly_mul
from ..utils import SyndromeLike, part_weights, split_syndrome, to_syndrome
from .base import BaseEvaluator

SyndromeTable = Tuple[Tuple[Fraction, ...], ...]


class FullSyndromeEvaluation(BaseEvaluator):
    """
    Evaluation of A~_w(s) at individual syndromes. Expressions with a split
    syndrome form are answered from it; everything else goes through a full
    (n+1) x 2^m table built from the stacking and concatenation identities.
    """

    def acwd(self, expr: EnsembleExpr, s: SyndromeLike, w: int) -> Fraction:
        """
        A~_w(s) of any expression.

        Args:
            expr: the ensemble expression.
            s: syndrome as a bit string, 0/1 sequence or int (bit i is row i).
            w: weight in [0, n].
        """
        syndrome = to_syndrome(s, expr.m)
        self._check_weight(expr, w)
        return self._full_value(expr, syndrome, w)

    def _full_value(self, node: EnsembleExpr, s: int, w: int) -> Fraction:
        partition = self.split_partition(node)
        if partition is not None:
            return self._split_value(node, partition, part_weights(s, partition), w)
        return self.syndrome_table(node)[w][s]

    def syndrome_table(self, expr: EnsembleExpr) -> SyndromeTable:
        """table[w][s] = A~_w(s) for every weight and every one of the 2^m syndromes."""
        return self._memoized(("syndrome_table", expr), lambda: self._compute_syndrome_table(expr))

    def _compute_syndrome_table(self, node: EnsembleExpr) -> SyndromeTable:
        self._require_full_syndrome(node, "full syndrome table")
        size = 1 << node.m

        if isinstance(node, Base) and isinstance(node.params, SingleMatrix):
            return self._single_matrix_table(node.params)

        if isinstance(node, ColShuffle):
            child_table = self.syndrome_table(node.children[0])
            value = combinators.col_shuffle_acwd(lambda s, w: child_table[w][s])
            return tuple(tuple(value(s, w) for s in range(size)) for w in range(node.n + 1))

        if isinstance(node, Concat) and len(node.children) == 1:
            return self.syndrome_table(node.children[0])

        if isinstance(node, Stack):
            if sum(not c.column_symmetric for c in node.children) > 1:
                raise SymmetryError("a stack may hold at most one component that is not column symmetric", node)
            # child tables are built here, once, before the rows fan out
            for c in node.children:
                if self.split_partition(c) is None:
                    self.syndrome_table(c)
            children = [
                (lambda part, w, c=c: self._full_value(c, part, w)) for c in node.children
            ]

            def stack_row(w: int) -> List[Fraction]:
                return [combinators.stack_acwd(children, node.row_sizes, node.n, s, w) for s in range(size)]

            rows = self._fill(range(node.n + 1), stack_row, desc="stack table")
            return tuple(tuple(rows[w]) for w in range(node.n + 1))

        if isinstance(node, Concat) and len(node.children) > 1:
            head = node.prefix(len(node.children) - 1)
            last = node.children[-1]
            head_table = self.syndrome_table(head)
            last_table = self.syndrome_table(last)

            def concat_row(w: int) -> List[Fraction]:
                return [
                    combinators.concat_acwd(
                        lambda sa, wa: head_table[wa][sa],
                        lambda sb, wb: last_table[wb][sb],
                        node.m,
                        head.n,
                        last.n,
                        s,
                        w,
                    )
                    for s in range(size)
                ]

            rows = self._fill(range(node.n + 1), concat_row, desc="concat table")
            return tuple(tuple(rows[w]) for w in range(node.n + 1))

        # remaining nodes carry a split form; tabulate it
        return tuple(
            tuple(self._full_value(node, s, w) for s in range(size)) for w in range(node.n + 1)
        )

    def _single_matrix_table(self, params: SingleMatrix) -> SyndromeTable:
        if params.block_n > self.budgets.max_enumeration_bits:
            raise BudgetError(
                f"single matrix with {params.block_n} columns exceeds "
                f"max_enumeration_bits={self.budgets.max_enumeration_bits}"
            )
        block = SingleMatrix(params.rows)
        counts = coset_count_matrix(block.columns(), block.m)
        if params.copies == 1:
            return tuple(tuple(Fraction(int(c)) for c in counts[w]) for w in range(params.n + 1))

        self.logger.debug(f"Block diagonal product over {params.copies} copies")
        polys = [DensePoly(int(c) for c in counts[:, s]) for s in range(1 << block.m)]
        table = [[Fraction(0)] * (1 << params.m) for _ in range(params.n + 1)]
        for s in range(1 << params.m):
            poly = DensePoly([1])
            for part in split_syndrome(s, [block.m] * params.copies):
                poly = poly_mul(poly, polys[part])
            for w in range(params.n + 1):
                table[w][s] = poly.coeff(w)
        return tuple(tuple(row) for row in table)

    def concat_acwd(self, expr: Concat, s: SyndromeLike, w: int) -> Fraction:
        """A~_w(s) of a concatenation by direct summation over s_a in F_2^m."""
        self._check_weight(expr, w)
        total = Fraction(0)
        for w1 in range(w + 1):
            total += self.split_concat_acwd(expr, s, w1, w - w1)
        return total

    def split_concat_acwd(self, expr: Concat, s: SyndromeLike, w1: int, w2: int) -> Fraction:
        """
        A~_{w1,w2}(s) of a concatenation: w1 is the weight on all components but
        the last, w2 the weight on the last one.
        """
        if not isinstance(expr, Concat) or len(expr.children) < 2:
            raise SymmetryError("split ACWD needs a concatenation of at least two components", expr)
        syndrome = to_syndrome(s, expr.m)
        head = expr.prefix(len(expr.children) - 1)
        last = expr.children[-1]
        if not (0 <= w1 <= head.n and 0 <= w2 <= last.n):
            return Fraction(0)
        self._require_full_syndrome(expr, "split ACWD summation")
        return combinators.split_concat_acwd(
            lambda sa, wa: self._full_value(head, sa, wa),
            lambda sb, wb: self._full_value(last, sb, wb),
            expr.m,
            syndrome,
            w1,
            w2,
        )

    # ---------- accumulated distribution ----------
    def accumulated_acwd(self, expr: EnsembleExpr, s: SyndromeLike, tau: int) -> Fraction:
        """F~_tau(s) = sum_{w <= tau} A~_w(s), the ensemble average of F_tau(H, s)."""
        if not 0 <= tau <= expr.n:
            raise ParameterError(f"tau={tau} outside [0, {expr.n}]")
        syndrome = to_syndrome(s, expr.m)
        return sum((self._full_value(expr, syndrome, w) for w in range(tau + 1)), Fraction(0))

    def markov_bound(self, expr: EnsembleExpr, s: SyndromeLike, tau: int) -> Fraction:
        """Upper bound on Pr[D(H, s) <= tau] from Markov's inequality, capped at 1."""
        return min(Fraction(1), self.accumulated_acwd(expr, s, tau))
