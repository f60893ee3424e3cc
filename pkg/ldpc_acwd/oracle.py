"""
Brute force ground truth: enumerate every member of a small ensemble and
count coset members directly.

Members are column-mask tuples (bit i of column c is entry (i, c)). An
enumerator holds them as a Counter so repeated matrices are scanned once; the
multiplicities keep the uniform measure over the ensemble's construction.
"""

from collections import Counter
from fractions import Fraction
from itertools import chain, combinations, permutations, product, repeat
from math import factorial
from typing import Dict, Iterator, Optional, Sequence, Tuple

import numpy as np
from tqdm.auto import tqdm

from . import log
from .config import Budgets, Settings
from .ensembles.closed_forms import coset_count_matrix, single_matrix_cwd
from .ensembles.expr import Base, ColShuffle, Concat, EnsembleExpr, RowShuffle, Stack
from .ensembles.params import Bipartite, ConstantRow, Gallager, SingleMatrix
from .exceptions import BudgetError, ParameterError
from .poly import binom
from .utils import SyndromeLike, to_syndrome, word_syndromes, word_weights

Matrix = Tuple[int, ...]

logger = log._AcwdLogger("ORACLE", log.acwd_logger)


class EnsembleEnumerator:
    """
    A finite ensemble of m x n matrices under the uniform measure.

    Iterating yields every member once per construction that produces it, so
    len(enumerator) is the ensemble size #G (e.g. (jn)! for the socket model).
    """

    def __init__(self, n: int, m: int, members: Dict[Matrix, int], label: str = ""):
        self.n = n
        self.m = m
        self.members = Counter(members)
        self.label = label

    @property
    def size(self) -> int:
        return sum(self.members.values())

    @property
    def distinct(self) -> int:
        return len(self.members)

    def __len__(self) -> int:
        return self.size

    def __iter__(self) -> Iterator[Matrix]:
        return chain.from_iterable(repeat(h, c) for h, c in self.members.items())

    def items(self):
        return self.members.items()

    def __repr__(self) -> str:
        return f"EnsembleEnumerator({self.label or 'ensemble'}, n={self.n}, m={self.m}, size={self.size})"


def _budgets(budgets: Optional[Budgets]) -> Budgets:
    return budgets or Budgets.from_env()


def _check_members(count: int, what: str, budgets: Budgets) -> None:
    if count > budgets.max_members:
        raise BudgetError(f"{what} needs {count} members, above max_members={budgets.max_members}")


# ---------- base ensembles ----------
def enumerate_bipartite(j: int, k: int, n: int, m: int, budgets: Optional[Budgets] = None) -> EnsembleEnumerator:
    """
    Socket model: variable node v owns sockets v*j .. v*j+j-1, check node c owns
    sockets c*k .. c*k+k-1, and every permutation of the jn sockets is one
    member. Parallel edges cancel over F_2, so columns are built with xor.
    """
    Bipartite(j, k, n, m)
    budgets = _budgets(budgets)
    sockets = j * n
    if sockets > budgets.max_socket_count:
        raise BudgetError(
            f"socket model with jn={sockets} exceeds max_socket_count={budgets.max_socket_count}"
        )
    owner = [t // j for t in range(sockets)]
    members: Counter = Counter()
    for perm in permutations(range(sockets)):
        columns = [0] * n
        for t, target in enumerate(perm):
            columns[owner[t]] ^= 1 << (target // k)
        members[tuple(columns)] += 1
    logger.debug(f"Socket model ({j},{k}) n={n}: {factorial(sockets)} permutations, {len(members)} distinct")
    return EnsembleEnumerator(n, m, members, f"bipartite({j},{k})")


def enumerate_constant_row(k: int, n: int, m: int, budgets: Optional[Budgets] = None) -> EnsembleEnumerator:
    """All m-tuples of weight-k rows."""
    ConstantRow(k, n, m)
    budgets = _budgets(budgets)
    _check_members(binom(n, k) ** m, "constant row enumeration", budgets)
    row_masks = [sum(1 << c for c in cols) for cols in combinations(range(n), k)]
    members: Counter = Counter()
    for rows in product(row_masks, repeat=m):
        columns = tuple(sum(((row >> c) & 1) << i for i, row in enumerate(rows)) for c in range(n))
        members[columns] += 1
    return EnsembleEnumerator(n, m, members, f"constant_row({k})")


def enumerate_gallager(j: int, k: int, n: int, m: int, budgets: Optional[Budgets] = None) -> EnsembleEnumerator:
    """
    j stacked tiers, each an independent column permutation of the canonical
    tier whose row i holds ones in columns i*k .. i*k+k-1.
    """
    params = Gallager(j, k, n, m)
    budgets = _budgets(budgets)
    _check_members(factorial(n) ** j, "Gallager enumeration", budgets)
    r = params.tier_rows
    tier_choices = []
    for t in range(j):
        tier = Counter()
        for perm in permutations(range(n)):
            tier[tuple(1 << (t * r + perm[c] // k) for c in range(n))] += 1
        tier_choices.append(tier)
    members: Counter = Counter()
    for combo in product(*(tier.items() for tier in tier_choices)):
        columns = tuple(sum(cols[c] for cols, _ in combo) for c in range(n))
        mult = 1
        for _, count in combo:
            mult *= count
        members[columns] += mult
    return EnsembleEnumerator(n, m, members, f"gallager({j},{k})")


def enumerate_single(params: SingleMatrix) -> EnsembleEnumerator:
    return EnsembleEnumerator(params.n, params.m, {params.columns(): 1}, "single_matrix")


# ---------- combined ensembles ----------
def _permute_rows(column: int, perm: Sequence[int]) -> int:
    out = 0
    for i, target in enumerate(perm):
        if (column >> i) & 1:
            out |= 1 << target
    return out


def enumerate_expr(expr: EnsembleExpr, budgets: Optional[Budgets] = None) -> EnsembleEnumerator:
    """
    Members of any ensemble expression: stacks and concatenations take the
    product of their children's members, column and row shuffles apply every
    permutation to every member.
    """
    budgets = _budgets(budgets)

    if isinstance(expr, Base):
        p = expr.params
        if isinstance(p, Bipartite):
            return enumerate_bipartite(p.j, p.k, p.n, p.m, budgets)
        if isinstance(p, ConstantRow):
            return enumerate_constant_row(p.k, p.n, p.m, budgets)
        if isinstance(p, Gallager):
            return enumerate_gallager(p.j, p.k, p.n, p.m, budgets)
        return enumerate_single(p)

    if isinstance(expr, ColShuffle):
        child = enumerate_expr(expr.child, budgets)
        _check_members(child.distinct * factorial(child.n), f"column shuffle of {expr.child}", budgets)
        members: Counter = Counter()
        for h, count in child.items():
            for perm in permutations(range(child.n)):
                members[tuple(h[c] for c in perm)] += count
        return EnsembleEnumerator(child.n, child.m, members, expr.describe())

    if isinstance(expr, RowShuffle):
        child = enumerate_expr(expr.child, budgets)
        _check_members(child.distinct * factorial(child.m), f"row shuffle of {expr.child}", budgets)
        members = Counter()
        for h, count in child.items():
            for perm in permutations(range(child.m)):
                members[tuple(_permute_rows(col, perm) for col in h)] += count
        return EnsembleEnumerator(child.n, child.m, members, expr.describe())

    parts = [enumerate_expr(c, budgets) for c in expr.children]
    combos = 1
    for part in parts:
        combos *= part.distinct
    _check_members(combos, f"product over the components of {expr}", budgets)

    members = Counter()
    for combo in product(*(part.items() for part in parts)):
        mult = 1
        for _, count in combo:
            mult *= count
        if isinstance(expr, Stack):
            columns, offset = [0] * expr.n, 0
            for (h, _), part in zip(combo, parts):
                for c in range(expr.n):
                    columns[c] |= h[c] << offset
                offset += part.m
            members[tuple(columns)] += mult
        elif isinstance(expr, Concat):
            members[tuple(col for h, _ in combo for col in h)] += mult
    return EnsembleEnumerator(expr.n, expr.m, members, expr.describe())


# ---------- definitional ACWD ----------
def _check_work(e: EnsembleEnumerator, budgets: Budgets) -> None:
    if e.n > budgets.max_enumeration_bits:
        raise BudgetError(f"n={e.n} exceeds max_enumeration_bits={budgets.max_enumeration_bits}")
    work = e.distinct << e.n
    if work > budgets.max_oracle_work:
        raise BudgetError(
            f"{e.distinct} distinct members x 2^{e.n} words = {work} exceeds max_oracle_work={budgets.max_oracle_work}"
        )


def acwd_bruteforce(
    e: EnsembleEnumerator, s: SyndromeLike, w: int, budgets: Optional[Budgets] = None
) -> Fraction:
    """A~_w(s) = sum_{z of weight w} #{H : H z^t = s} / #G, by scanning every member."""
    budgets = _budgets(budgets)
    _check_work(e, budgets)
    if not 0 <= w <= e.n:
        raise ParameterError(f"weight w={w} outside [0, {e.n}]")
    syndrome = to_syndrome(s, e.m)
    weight_mask = word_weights(e.n) == w
    hits = 0
    for h, count in e.items():
        hits += count * int(np.count_nonzero(weight_mask & (word_syndromes(h) == syndrome)))
    return Fraction(hits, e.size)


def bruteforce_distribution(
    e: EnsembleEnumerator, budgets: Optional[Budgets] = None, settings: Optional[Settings] = None
) -> Tuple[Tuple[Fraction, ...], ...]:
    """Every A~_w(s) at once: table[w][s] over all weights and all 2^m syndromes."""
    budgets = _budgets(budgets)
    settings = settings or Settings.from_env()
    _check_work(e, budgets)
    if e.m > budgets.max_syndrome_bits:
        raise BudgetError(f"m={e.m} exceeds max_syndrome_bits={budgets.max_syndrome_bits}")
    logger.debug(f"Brute force over {e.distinct} distinct members of {e!r}")
    total = np.zeros((e.n + 1, 1 << e.m), dtype=np.int64)
    for h, count in tqdm(e.items(), total=e.distinct, desc="members", disable=not settings.show_progress):
        total += count * coset_count_matrix(h, e.m)
    size = e.size
    return tuple(tuple(Fraction(int(v), size) for v in row) for row in total)


# ---------- single matrices ----------
def coset_weight(rows: Sequence[str], s: SyndromeLike, budgets: Optional[Budgets] = None) -> Optional[int]:
    """
    D(H, s), the weight of a coset leader of C(H, s).

    Returns:
        the minimum weight, or None when the coset is empty.
    """
    cwd = single_matrix_cwd(rows, s, budgets)
    for w, count in enumerate(cwd):
        if count:
            return w
    return None


def accumulated_cwd(rows: Sequence[str], s: SyndromeLike, tau: int, budgets: Optional[Budgets] = None) -> int:
    """F_tau(H, s) = sum_{w <= tau} A_w(H, s); positive exactly when D(H, s) <= tau."""
    cwd = single_matrix_cwd(rows, s, budgets)
    if not 0 <= tau < len(cwd):
        raise ParameterError(f"tau={tau} outside [0, {len(cwd) - 1}]")
    return sum(cwd[: tau + 1])
