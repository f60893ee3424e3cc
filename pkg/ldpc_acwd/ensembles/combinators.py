"""
The ensemble algebra as pure formulas.

Every combinator takes its operands as ACWD functions and returns one exact
value. Operands come in three shapes:

    AcwdFunction       f(s, w)       full syndrome form, s an m-bit int
    RowSymmetricAcwd   f(sigma, w)   row symmetric form, sigma = |s|
    SplitAcwd          f(sigmas, w)  split syndrome form over a row partition

Symmetry preconditions are the caller's responsibility; the evaluator checks
the structural flags before it reaches these functions.
"""

from fractions import Fraction
from itertools import product
from math import comb
from typing import Callable, Iterator, Sequence, Tuple

from ..exceptions import ParameterError
from ..utils import split_syndrome, weight_class

AcwdFunction = Callable[[int, int], Fraction]
RowSymmetricAcwd = Callable[[int, int], Fraction]
SplitAcwd = Callable[[Tuple[int, ...], int], Fraction]


def weight_splits(w: int, n_a: int, n_b: int) -> range:
    """Admissible left weights w_a with 0 <= w_a <= n_a and 0 <= w - w_a <= n_b."""
    return range(max(0, w - n_b), min(w, n_a) + 1)


def compositions(total: int, part_sizes: Sequence[int]) -> Iterator[Tuple[int, ...]]:
    """All (sigma_1, ..., sigma_u) with 0 <= sigma_i <= part_sizes[i] summing to total."""
    if not part_sizes:
        if total == 0:
            yield ()
        return
    head, rest = part_sizes[0], part_sizes[1:]
    room = sum(rest)
    for first in range(max(0, total - room), min(head, total) + 1):
        for tail in compositions(total - first, rest):
            yield (first,) + tail


# ---------- shuffles ----------
def row_shuffle_acwd(child: AcwdFunction, m: int, sigma: int, w: int) -> Fraction:
    """B~_w(sigma) of Gamma_r(child): the average of child over all syndromes of weight sigma."""
    if not 0 <= sigma <= m:
        raise ParameterError(f"sigma={sigma} outside [0, {m}]")
    total = sum((child(s, w) for s in weight_class(m, sigma)), Fraction(0))
    return total / comb(m, sigma)


def split_row_shuffle_acwd(child: SplitAcwd, part_sizes: Sequence[int], sigma: int, w: int) -> Fraction:
    """
    B~_w(sigma) of Gamma_r(child) when child has a split form over part_sizes:
    sum over compositions of prod C(m_i, sigma_i) C~_w(sigma_1..sigma_u), over C(m, sigma).
    """
    m = sum(part_sizes)
    if not 0 <= sigma <= m:
        raise ParameterError(f"sigma={sigma} outside [0, {m}]")
    total = Fraction(0)
    for sigmas in compositions(sigma, part_sizes):
        value = child(sigmas, w)
        if not value:
            continue
        weight = 1
        for size, s in zip(part_sizes, sigmas):
            weight *= comb(size, s)
        total += weight * value
    return total / comb(m, sigma)


def col_shuffle_acwd(child: AcwdFunction) -> AcwdFunction:
    """Column shuffling leaves every ACWD value unchanged."""
    return child


# ---------- stacking ----------
def stack_product(values: Sequence[Fraction], n: int, w: int) -> Fraction:
    """prod_i A~^(i) / C(n, w)^(t-1) for t stacked components."""
    out = Fraction(1)
    for v in values:
        if not v:
            return Fraction(0)
        out *= v
    return out / Fraction(comb(n, w)) ** (len(values) - 1)


def stack_acwd(
    children: Sequence[AcwdFunction], row_sizes: Sequence[int], n: int, s: int, w: int
) -> Fraction:
    """
    ACWD of A_1 / A_2 / ... / A_t at s = (s_1, ..., s_t).

    All components except at most one must be column symmetric.
    """
    if len(children) != len(row_sizes):
        raise ParameterError("stack_acwd needs one row size per component")
    parts = split_syndrome(s, row_sizes)
    return stack_product([f(part, w) for f, part in zip(children, parts)], n, w)


def stacked_row_shuffled_acwd(
    children: Sequence[RowSymmetricAcwd], row_sizes: Sequence[int], n: int, sigma: int, w: int
) -> Fraction:
    """
    B~ of Gamma_r(B_1 / ... / B_u) for column and row symmetric components:
    sum_{sigma_1+..+sigma_u = sigma} prod C(m_i, sigma_i) B~^(i)_w(sigma_i), over C(m,sigma) C(n,w)^(u-1).
    """

    def split(sigmas: Tuple[int, ...], weight: int) -> Fraction:
        return stack_product([f(s, weight) for f, s in zip(children, sigmas)], n, weight)

    return split_row_shuffle_acwd(split, row_sizes, sigma, w)


# ---------- concatenation ----------
def split_concat_acwd(
    a: AcwdFunction, b: AcwdFunction, m: int, s: int, w1: int, w2: int
) -> Fraction:
    """Split ACWD of A o B: sum over s_a of A~_{w1}(s_a) B~_{w2}(s + s_a)."""
    total = Fraction(0)
    for s_a in range(1 << m):
        left = a(s_a, w1)
        if left:
            total += left * b(s ^ s_a, w2)
    return total


def concat_acwd(a: AcwdFunction, b: AcwdFunction, m: int, n_a: int, n_b: int, s: int, w: int) -> Fraction:
    """ACWD of A o B at full syndrome s, summing the split ACWD over w_a."""
    return sum(
        (split_concat_acwd(a, b, m, s, w_a, w - w_a) for w_a in weight_splits(w, n_a, n_b)),
        Fraction(0),
    )


def split_weight_row_symmetric_acwd(
    a: RowSymmetricAcwd, b: RowSymmetricAcwd, m: int, sigma: int, w1: int, w2: int
) -> Fraction:
    """
    Split ACWD of A o B for row symmetric components:
    sum_{mu1, mu2} C(sigma, mu1) C(m - sigma, mu2) B~^A_{w1}(mu1 + mu2) B~^B_{w2}(sigma - mu1 + mu2).
    """
    if not 0 <= sigma <= m:
        raise ParameterError(f"sigma={sigma} outside [0, {m}]")
    total = Fraction(0)
    for mu1 in range(sigma + 1):
        for mu2 in range(m - sigma + 1):
            left = a(mu1 + mu2, w1)
            if not left:
                continue
            right = b(sigma - mu1 + mu2, w2)
            if right:
                total += comb(sigma, mu1) * comb(m - sigma, mu2) * left * right
    return total


def concat_row_symmetric_acwd(
    a: RowSymmetricAcwd, b: RowSymmetricAcwd, m: int, n_a: int, n_b: int, sigma: int, w: int
) -> Fraction:
    """B~_w(sigma) of A o B when both A and B are row symmetric."""
    return sum(
        (split_weight_row_symmetric_acwd(a, b, m, sigma, w_a, w - w_a) for w_a in weight_splits(w, n_a, n_b)),
        Fraction(0),
    )


def split_form_concat_acwd(
    d: SplitAcwd,
    a: SplitAcwd,
    part_sizes: Sequence[int],
    n_a: int,
    n_b: int,
    sigmas: Sequence[int],
    w: int,
) -> Fraction:
    """
    C~_w(sigma_1..sigma_u) of D o A when both operands are in split form over the same
    partition. Each part j contributes its own (p_j, q_j) pair: p_j rows of s_a inside the
    support of s_j, q_j rows outside it.
    """
    if len(sigmas) != len(part_sizes):
        raise ParameterError(f"expected {len(part_sizes)} part weights, got {len(sigmas)}")
    for size, s in zip(part_sizes, sigmas):
        if not 0 <= s <= size:
            raise ParameterError(f"part weight {s} outside [0, {size}]")

    choices = [
        [(p, q, comb(s, p) * comb(size - s, q)) for p in range(s + 1) for q in range(size - s + 1)]
        for size, s in zip(part_sizes, sigmas)
    ]
    total = Fraction(0)
    for w_a in weight_splits(w, n_a, n_b):
        w_b = w - w_a
        for combo in product(*choices):
            left = d(tuple(p + q for p, q, _ in combo), w_a)
            if not left:
                continue
            right = a(tuple(s - p + q for s, (p, q, _) in zip(sigmas, combo)), w_b)
            if not right:
                continue
            weight = 1
            for _, _, c in combo:
                weight *= c
            total += weight * left * right
    return total


def row_symmetric_as_split(child: RowSymmetricAcwd) -> SplitAcwd:
    """Split form of a row symmetric component: C~_w(sigma_1..sigma_u) = B~_w(sum sigma_i)."""

    def split(sigmas: Tuple[int, ...], w: int) -> Fraction:
        return child(sum(sigmas), w)

    return split
