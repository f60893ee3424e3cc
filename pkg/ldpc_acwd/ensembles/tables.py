"""
Exact result containers: the row symmetric table B~_w(sigma) and the split
syndrome tensor C~_w(sigma_1, ..., sigma_u).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb
from typing import Dict, Iterator, List, Sequence, Tuple

from ..exceptions import ParameterError


@dataclass(frozen=True)
class AcwdTable:
    """
    Row symmetric ACWD of an ensemble with column size n and row size m.

    entries[w][sigma] holds B~_w(sigma); lookups outside the table are zero.
    """

    n: int
    m: int
    entries: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.n + 1 or any(len(r) != self.m + 1 for r in self.entries):
            raise ParameterError(f"AcwdTable entries must be {self.n + 1} x {self.m + 1}")

    @classmethod
    def from_rows(cls, n: int, m: int, rows: Sequence[Sequence[Fraction]]) -> "AcwdTable":
        return cls(n, m, tuple(tuple(Fraction(v) for v in row) for row in rows))

    def __call__(self, w: int, sigma: int) -> Fraction:
        if 0 <= w <= self.n and 0 <= sigma <= self.m:
            return self.entries[w][sigma]
        return Fraction(0)

    def total_mass(self, w: int) -> Fraction:
        """sum_sigma C(m, sigma) B~_w(sigma); equals C(n, w) for any ensemble."""
        return sum((comb(self.m, s) * self.entries[w][s] for s in range(self.m + 1)), Fraction(0))

    def satisfies_total_mass(self) -> bool:
        return all(self.total_mass(w) == comb(self.n, w) for w in range(self.n + 1))

    def weight_distribution(self) -> Tuple[Fraction, ...]:
        """Average weight distribution of the ensemble's codes, B~_w(0)."""
        return tuple(row[0] for row in self.entries)

    def by_syndrome_weight(self) -> List[List[Fraction]]:
        """sigma-major layout (sigma rows, w columns), as the tables are usually printed."""
        return [[self.entries[w][s] for w in range(self.n + 1)] for s in range(self.m + 1)]


@dataclass(frozen=True)
class SplitAcwdTensor:
    """
    ACWD in split syndrome form over a row partition (m_1, ..., m_u).

    entries maps (w, (sigma_1, ..., sigma_u)) to C~_w(sigma_1, ..., sigma_u).
    Missing keys are zero.
    """

    n: int
    part_sizes: Tuple[int, ...]
    entries: Dict[Tuple[int, Tuple[int, ...]], Fraction]

    @property
    def m(self) -> int:
        return sum(self.part_sizes)

    def __call__(self, w: int, sigmas: Sequence[int]) -> Fraction:
        return self.entries.get((w, tuple(sigmas)), Fraction(0))

    def sigma_grid(self) -> Iterator[Tuple[int, ...]]:
        return product(*(range(size + 1) for size in self.part_sizes))

    def cells(self) -> Iterator[Tuple[int, Tuple[int, ...], Fraction]]:
        for w in range(self.n + 1):
            for sigmas in self.sigma_grid():
                yield w, sigmas, self(w, sigmas)

    def total_mass(self, w: int) -> Fraction:
        total = Fraction(0)
        for sigmas in self.sigma_grid():
            weight = 1
            for size, s in zip(self.part_sizes, sigmas):
                weight *= comb(size, s)
            total += weight * self(w, sigmas)
        return total

    def satisfies_total_mass(self) -> bool:
        return all(self.total_mass(w) == comb(self.n, w) for w in range(self.n + 1))
