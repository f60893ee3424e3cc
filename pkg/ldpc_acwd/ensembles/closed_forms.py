"""
Closed form ACWDs of the base ensembles.

All values are exact Fractions. The Gallager prefactor C(n,w) * prod(1/C(n,w))
is used in its telescoped form C(n,w)^(1-j).
"""

from collections import Counter
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Optional, Sequence, Tuple

import numpy as np

from ..config import Budgets
from ..exceptions import BudgetError, ParameterError
from ..poly import DensePoly, binom, enumerator_power, multinom, poly_mul
from ..utils import SyndromeLike, columns_from_rows, popcount, split_syndrome, to_syndrome, word_syndromes, word_weights
from .params import Bipartite, ConstantRow, Gallager
from .tables import AcwdTable


def _check_weight(w: int, n: int) -> None:
    if not 0 <= w <= n:
        raise ParameterError(f"weight w={w} outside [0, {n}]")


def _check_sigma(sigma: int, m: int) -> None:
    if not 0 <= sigma <= m:
        raise ParameterError(f"syndrome weight sigma={sigma} outside [0, {m}]")


# ---------- Gallager ----------
def gallager_acwd_from_tier_weights(
    j: int, k: int, n: int, m: int, tier_weights: Sequence[int], w: int
) -> Fraction:
    """
    Gallager ACWD as a function of the sub-syndrome weights (|s_1|, ..., |s_j|).

    Args:
        j, k, n, m: ensemble parameters, (m/j)*k = n.
        tier_weights: one syndrome weight per tier, each in [0, m/j].
        w: codeword weight in [0, n].

    Returns:
        C(n,w)^(1-j) * prod_i [alpha_k^(m/j - b_i) beta_k^(b_i)]_w
    """
    params = Gallager(j, k, n, m)
    _check_weight(w, n)
    if len(tier_weights) != j:
        raise ParameterError(f"gallager needs {j} tier weights, got {len(tier_weights)}")
    r = params.tier_rows
    value = Fraction(binom(n, w))
    for b in tier_weights:
        if not 0 <= b <= r:
            raise ParameterError(f"tier weight {b} outside [0, {r}]")
        count = enumerator_power(k, r - b, b, w).coeff(w)
        if not count:
            return Fraction(0)
        value *= count / binom(n, w)
    return value


def gallager_acwd(j: int, k: int, n: int, m: int, s: SyndromeLike, w: int) -> Fraction:
    """Gallager ACWD at a full syndrome; tier i holds rows i*m/j .. (i+1)*m/j - 1."""
    params = Gallager(j, k, n, m)
    syndrome = to_syndrome(s, m)
    tiers = tuple(popcount(part) for part in split_syndrome(syndrome, params.tiers))
    return gallager_acwd_from_tier_weights(j, k, n, m, tiers, w)


def tier_profiles(j: int, tier_rows: int, sigma: int):
    """
    Sorted tier weight profiles of total sigma with their number of orderings.

    Yields (profile, orderings) where orderings = multinom(j, multiplicities).
    """
    for profile in combinations_with_replacement(range(tier_rows + 1), j):
        if sum(profile) != sigma:
            continue
        yield profile, multinom(j, list(Counter(profile).values()))


def row_shuffled_gallager_acwd(j: int, k: int, n: int, m: int, sigma: int, w: int) -> Fraction:
    """
    B~_w(sigma) of the row shuffled Gallager ensemble.

    Averages the tier-weight form over all syndromes of weight sigma: each sorted
    profile (b_1..b_j) stands for multinom(j, mult) orderings, and each ordering
    for prod C(m/j, b_i) syndromes.
    """
    params = Gallager(j, k, n, m)
    _check_weight(w, n)
    _check_sigma(sigma, m)
    r = params.tier_rows
    total = Fraction(0)
    for profile, orderings in tier_profiles(j, r, sigma):
        syndromes = 1
        for b in profile:
            syndromes *= binom(r, b)
        total += orderings * syndromes * gallager_acwd_from_tier_weights(j, k, n, m, profile, w)
    return total / binom(m, sigma)


# ---------- constant row weight ----------
def gamma(n: int, k: int, w: int) -> Fraction:
    """Probability that a uniformly drawn weight-k row is orthogonal to a fixed weight-w word."""
    even = sum(binom(w, 2 * i) * binom(n - w, k - 2 * i) for i in range(k // 2 + 1))
    return Fraction(even, binom(n, k))


def constant_row_acwd_by_weight(k: int, n: int, m: int, sigma: int, w: int) -> Fraction:
    ConstantRow(k, n, m)
    _check_weight(w, n)
    _check_sigma(sigma, m)
    g = gamma(n, k, w)
    return g ** (m - sigma) * (1 - g) ** sigma * binom(n, w)


def constant_row_acwd(k: int, n: int, m: int, s: SyndromeLike, w: int) -> Fraction:
    return constant_row_acwd_by_weight(k, n, m, popcount(to_syndrome(s, m)), w)


# ---------- regular bipartite ----------
def bipartite_acwd(j: int, k: int, n: int, m: int, sigma: int, w: int) -> Fraction:
    """B~_w(sigma) = [alpha_k^(m-sigma) beta_k^sigma]_(wj) / C(nj, wj) * C(n, w)."""
    Bipartite(j, k, n, m)
    _check_weight(w, n)
    _check_sigma(sigma, m)
    count = enumerator_power(k, m - sigma, sigma, w * j).coeff(w * j)
    return count * Fraction(binom(n, w), binom(n * j, w * j))


def bipartite_table(j: int, k: int, n: int, m: int) -> AcwdTable:
    """Whole B~ table; one enumerator product per sigma serves every w."""
    Bipartite(j, k, n, m)
    scale = [Fraction(binom(n, w), binom(n * j, w * j)) for w in range(n + 1)]
    columns = []
    for sigma in range(m + 1):
        poly = enumerator_power(k, m - sigma, sigma)
        columns.append([poly.coeff(w * j) * scale[w] for w in range(n + 1)])
    return AcwdTable.from_rows(n, m, [[columns[s][w] for s in range(m + 1)] for w in range(n + 1)])


# ---------- explicit matrices ----------
def _enumeration_gate(n: int, budgets: Optional[Budgets]) -> Budgets:
    budgets = budgets or Budgets.from_env()
    if n > budgets.max_enumeration_bits:
        raise BudgetError(
            f"exhaustive scan over 2^{n} words exceeds max_enumeration_bits={budgets.max_enumeration_bits}"
        )
    return budgets


def coset_count_matrix(columns: Sequence[int], m: int) -> np.ndarray:
    """
    counts[w, s] = A_w(H, s) for every weight and syndrome of the matrix with
    the given column masks. Shape (n+1, 2^m).
    """
    n = len(columns)
    syn = word_syndromes(columns)
    wt = word_weights(n)
    flat = np.bincount(syn * (n + 1) + wt, minlength=(1 << m) * (n + 1))
    return flat.reshape(1 << m, n + 1).T


def single_matrix_cwd(
    rows: Sequence[str], s: SyndromeLike, budgets: Optional[Budgets] = None
) -> Tuple[int, ...]:
    """
    Coset weight distribution (A_0, ..., A_n) of C(H, s) by a full scan of F_2^n.

    Args:
        rows: H as row bit strings.
        s: syndrome, see utils.to_syndrome.
        budgets: enumeration caps; n must not exceed max_enumeration_bits.
    """
    columns = columns_from_rows(rows)
    n, m = len(columns), len(rows)
    _enumeration_gate(n, budgets)
    syndrome = to_syndrome(s, m)
    syn = word_syndromes(columns)
    wt = word_weights(n)
    counts = np.bincount(wt[syn == syndrome], minlength=n + 1)
    return tuple(int(c) for c in counts)


def block_diagonal_cwd(
    rows_star: Sequence[str], copies: int, s: SyndromeLike, budgets: Optional[Budgets] = None
) -> Tuple[int, ...]:
    """
    Coset weight distribution of M(H*, copies), the block diagonal matrix with
    `copies` copies of H* on its diagonal: A_w = [prod_i A(H*, s_i; x)]_w.
    """
    if copies < 1:
        raise ParameterError(f"copies must be >= 1, got {copies}")
    m_star = len(rows_star)
    n_star = len(rows_star[0]) if rows_star else 0
    syndrome = to_syndrome(s, m_star * copies)
    poly = DensePoly([1])
    for part in split_syndrome(syndrome, [m_star] * copies):
        poly = poly_mul(poly, DensePoly(single_matrix_cwd(rows_star, part, budgets)))
    return tuple(int(poly.coeff(w)) for w in range(n_star * copies + 1))
