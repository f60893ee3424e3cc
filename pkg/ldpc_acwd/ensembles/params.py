"""
Parameter families of the base ensembles.

Each family is a frozen dataclass validated on construction, so an invalid
ensemble never reaches a formula.
"""

from dataclasses import dataclass
from typing import Tuple, Union

from ..exceptions import ParameterError
from ..utils import columns_from_rows


@dataclass(frozen=True)
class Gallager:
    """
    (j,k)-regular Gallager ensemble: j stacked tiers, each a column permutation
    of the canonical tier with m/j rows of k consecutive ones.
    """

    j: int
    k: int
    n: int
    m: int

    family = "gallager"

    def __post_init__(self):
        if self.j < 1 or self.k < 1 or self.n < 1 or self.m < 1:
            raise ParameterError(f"gallager needs positive j, k, n, m; got {self}")
        if self.m % self.j:
            raise ParameterError(f"gallager needs j | m, got j={self.j}, m={self.m}")
        if self.tier_rows * self.k != self.n:
            raise ParameterError(
                f"gallager needs (m/j)*k = n, got ({self.m}/{self.j})*{self.k} != {self.n}"
            )

    @property
    def tier_rows(self) -> int:
        return self.m // self.j

    @property
    def tiers(self) -> Tuple[int, ...]:
        return (self.tier_rows,) * self.j


@dataclass(frozen=True)
class ConstantRow:
    """All m x n matrices whose rows have weight exactly k."""

    k: int
    n: int
    m: int

    family = "constant_row"

    def __post_init__(self):
        if self.m < 1:
            raise ParameterError(f"constant_row needs m >= 1, got m={self.m}")
        if not 1 <= self.k <= self.n:
            raise ParameterError(f"constant_row needs 1 <= k <= n, got k={self.k}, n={self.n}")


@dataclass(frozen=True)
class Bipartite:
    """(j,k)-regular bipartite graph ensemble under the socket model."""

    j: int
    k: int
    n: int
    m: int

    family = "bipartite"

    def __post_init__(self):
        if self.j < 1 or self.k < 1 or self.n < 1 or self.m < 1:
            raise ParameterError(f"bipartite needs positive j, k, n, m; got {self}")
        if self.j * self.n != self.k * self.m:
            raise ParameterError(
                f"bipartite needs j*n = k*m, got {self.j}*{self.n} != {self.k}*{self.m}"
            )

    @property
    def design_rate(self) -> float:
        return 1.0 - self.j / self.k


@dataclass(frozen=True)
class SingleMatrix:
    """
    The one-member ensemble E(H). With copies > 1 the member is the block
    diagonal matrix holding `copies` copies of H on its main diagonal.
    """

    rows: Tuple[str, ...]
    copies: int = 1

    family = "single_matrix"

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        if self.copies < 1:
            raise ParameterError(f"single_matrix needs copies >= 1, got {self.copies}")
        # validates shape and alphabet
        columns_from_rows(self.rows)

    @property
    def block_n(self) -> int:
        return len(self.rows[0])

    @property
    def block_m(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return self.block_n * self.copies

    @property
    def m(self) -> int:
        return self.block_m * self.copies

    def block_rows(self) -> Tuple[str, ...]:
        """Rows of the full block diagonal matrix."""
        out = []
        for b in range(self.copies):
            left = "0" * (b * self.block_n)
            right = "0" * ((self.copies - b - 1) * self.block_n)
            out.extend(left + row + right for row in self.rows)
        return tuple(out)

    def columns(self) -> Tuple[int, ...]:
        return columns_from_rows(self.block_rows())


EnsembleParams = Union[Gallager, ConstantRow, Bipartite, SingleMatrix]
