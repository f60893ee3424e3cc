"""
Ensemble expressions: base ensembles combined by row/column shuffles,
stacking and concatenation.

Nodes are frozen and hashable so the evaluator can memoize on them. Symmetry
flags are structural: they follow from how a node is built, never from its
values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, List, Sequence, Tuple, Union

from ..exceptions import ParameterError, ShapeError
from .params import Bipartite, ConstantRow, EnsembleParams, Gallager, SingleMatrix


@dataclass(frozen=True)
class Base:
    params: EnsembleParams

    kind = "base"

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def m(self) -> int:
        return self.params.m

    @property
    def column_symmetric(self) -> bool:
        return not isinstance(self.params, SingleMatrix)

    @property
    def row_symmetric(self) -> bool:
        return isinstance(self.params, (Bipartite, ConstantRow))

    @property
    def children(self) -> Tuple["EnsembleExpr", ...]:
        return ()

    def describe(self) -> str:
        p = self.params
        if isinstance(p, Gallager):
            return f"gallager(j={p.j},k={p.k},n={p.n},m={p.m})"
        if isinstance(p, Bipartite):
            return f"bipartite(j={p.j},k={p.k},n={p.n},m={p.m})"
        if isinstance(p, ConstantRow):
            return f"constant_row(k={p.k},n={p.n},m={p.m})"
        rows = "/".join(p.rows)
        return f"single_matrix({rows})" if p.copies == 1 else f"single_matrix({rows})x{p.copies}"

    def __str__(self) -> str:
        return self.describe()


@dataclass(frozen=True)
class RowShuffle:
    """Gamma_r(child): the ensemble closed under all row permutations."""

    child: "EnsembleExpr"

    kind = "row_shuffle"

    @property
    def n(self) -> int:
        return self.child.n

    @property
    def m(self) -> int:
        return self.child.m

    @property
    def column_symmetric(self) -> bool:
        return self.child.column_symmetric

    @property
    def row_symmetric(self) -> bool:
        return True

    @property
    def children(self) -> Tuple["EnsembleExpr", ...]:
        return (self.child,)

    def describe(self) -> str:
        return f"row_shuffle({self.child.describe()})"

    def __str__(self) -> str:
        return self.describe()


@dataclass(frozen=True)
class ColShuffle:
    """Gamma_c(child): the ensemble closed under all column permutations."""

    child: "EnsembleExpr"

    kind = "col_shuffle"

    @property
    def n(self) -> int:
        return self.child.n

    @property
    def m(self) -> int:
        return self.child.m

    @property
    def column_symmetric(self) -> bool:
        return True

    @property
    def row_symmetric(self) -> bool:
        return self.child.row_symmetric

    @property
    def children(self) -> Tuple["EnsembleExpr", ...]:
        return (self.child,)

    def describe(self) -> str:
        return f"col_shuffle({self.child.describe()})"

    def __str__(self) -> str:
        return self.describe()


@dataclass(frozen=True)
class Stack:
    """A_1 / A_2 / ... : vertical composition, the first child holds the top rows."""

    children: Tuple["EnsembleExpr", ...]

    kind = "stack"

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        if not self.children:
            raise ParameterError("stack needs at least one child")
        widths = {c.n for c in self.children}
        if len(widths) != 1:
            raise ShapeError(f"stack children must share the column size, got {sorted(widths)}", self)

    @property
    def n(self) -> int:
        return self.children[0].n

    @property
    def m(self) -> int:
        return sum(c.m for c in self.children)

    @property
    def row_sizes(self) -> Tuple[int, ...]:
        return tuple(c.m for c in self.children)

    @property
    def column_symmetric(self) -> bool:
        return all(c.column_symmetric for c in self.children)

    @property
    def row_symmetric(self) -> bool:
        # a stack of several row symmetric parts still distinguishes its parts
        return len(self.children) == 1 and self.children[0].row_symmetric

    def describe(self) -> str:
        return "(" + " / ".join(c.describe() for c in self.children) + ")"

    def __str__(self) -> str:
        return self.describe()


@dataclass(frozen=True)
class Concat:
    """A_1 o A_2 o ... : horizontal composition, left associated."""

    children: Tuple["EnsembleExpr", ...]

    kind = "concat"

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        if not self.children:
            raise ParameterError("concat needs at least one child")
        heights = {c.m for c in self.children}
        if len(heights) != 1:
            raise ShapeError(f"concat children must share the row size, got {sorted(heights)}", self)

    @property
    def n(self) -> int:
        return sum(c.n for c in self.children)

    @property
    def m(self) -> int:
        return self.children[0].m

    @property
    def column_sizes(self) -> Tuple[int, ...]:
        return tuple(c.n for c in self.children)

    @property
    def column_symmetric(self) -> bool:
        return len(self.children) == 1 and self.children[0].column_symmetric

    @property
    def row_symmetric(self) -> bool:
        return all(c.row_symmetric for c in self.children)

    def prefix(self, length: int) -> "EnsembleExpr":
        """The left-associated partial concatenation of the first `length` children."""
        if length == 1:
            return self.children[0]
        return Concat(self.children[:length])

    def describe(self) -> str:
        return "(" + " o ".join(c.describe() for c in self.children) + ")"

    def __str__(self) -> str:
        return self.describe()


EnsembleExpr = Union[Base, RowShuffle, ColShuffle, Stack, Concat]


# ---------- constructors ----------
def gallager(j: int, k: int, n: int, m: int) -> Base:
    return Base(Gallager(j, k, n, m))


def constant_row(k: int, n: int, m: int) -> Base:
    return Base(ConstantRow(k, n, m))


def bipartite(j: int, k: int, n: int, m: int) -> Base:
    return Base(Bipartite(j, k, n, m))


def single_matrix(rows: Sequence[str], copies: int = 1) -> Base:
    return Base(SingleMatrix(tuple(rows), copies))


def row_shuffle(child: EnsembleExpr) -> RowShuffle:
    return RowShuffle(child)


def col_shuffle(child: EnsembleExpr) -> ColShuffle:
    return ColShuffle(child)


def stack(*children: EnsembleExpr) -> Stack:
    return Stack(tuple(children))


def concat(*children: EnsembleExpr) -> Concat:
    return Concat(tuple(children))


def walk(expr: EnsembleExpr) -> Iterator[EnsembleExpr]:
    """Pre-order traversal."""
    yield expr
    for child in expr.children:
        yield from walk(child)


def components(expr: EnsembleExpr) -> Tuple[EnsembleExpr, ...]:
    """Top level concatenation components; a non-concat node is its own single component."""
    return expr.children if isinstance(expr, Concat) else (expr,)


# ---------- combined ensemble shapes ----------
def _is_symmetric_block(node: EnsembleExpr) -> bool:
    return node.column_symmetric and node.row_symmetric


def validate_type1(expr: EnsembleExpr) -> List[str]:
    """
    Check that expr is A_1 o ... o A_s with every A_i either
    Gamma_r(B_1 / ... / B_u) of column and row symmetric blocks ("shuffled_stack")
    or a row symmetric ensemble ("row_symmetric").

    Returns:
        the condition each component satisfies, in order.

    Raises:
        ShapeError naming the first offending component.
    """
    labels = []
    for comp in components(expr):
        if isinstance(comp, RowShuffle) and isinstance(comp.child, Stack):
            bad = [b for b in comp.child.children if not _is_symmetric_block(b)]
            if not bad:
                labels.append("shuffled_stack")
                continue
        if comp.row_symmetric:
            labels.append("row_symmetric")
            continue
        raise ShapeError("type I component is neither a shuffled stack of symmetric blocks nor row symmetric", comp)
    return labels


def validate_type2(expr: EnsembleExpr) -> Tuple[int, ...]:
    """
    Check that expr is A_1 o ... o A_s with every A_i either a stack
    B_1 / ... / B_u of column and row symmetric blocks over a shared row
    partition, or a row symmetric ensemble.

    Row shuffles strictly inside a stack are rejected.

    Returns:
        the shared row partition (m_1, ..., m_u); (m,) when no component is a stack.
    """
    partition = None
    for comp in components(expr):
        if isinstance(comp, Stack):
            for block in comp.children:
                if any(isinstance(node, RowShuffle) for node in walk(block)):
                    raise ShapeError("row shuffle inside a type II stack", block)
                if not _is_symmetric_block(block):
                    raise ShapeError("type II stack block must be column and row symmetric", block)
            if partition is None:
                partition = comp.row_sizes
            elif comp.row_sizes != partition:
                raise ShapeError(
                    f"type II stacks must share the row partition {partition}, got {comp.row_sizes}", comp
                )
        elif not comp.row_symmetric:
            raise ShapeError("type II component is neither a stack of symmetric blocks nor row symmetric", comp)
    return partition if partition is not None else (expr.m,)
