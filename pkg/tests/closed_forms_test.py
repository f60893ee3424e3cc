from fractions import Fraction
from math import comb

import pytest
from conftest import CA_TABLE, CB_TABLE

from ldpc_acwd import Budgets, bipartite, constant_row, gallager, row_shuffle, single_matrix
from ldpc_acwd.ensembles.closed_forms import (
    bipartite_acwd,
    bipartite_table,
    block_diagonal_cwd,
    constant_row_acwd,
    gallager_acwd,
    gamma,
    row_shuffled_gallager_acwd,
    single_matrix_cwd,
)
from ldpc_acwd.ensembles.params import Bipartite, ConstantRow, Gallager, SingleMatrix
from ldpc_acwd.exceptions import BudgetError, ParameterError
from ldpc_acwd.utils import weight_class


def test_bipartite_2_4_table(evaluator, ca):
    table = evaluator.table(ca)
    assert table.by_syndrome_weight() == CA_TABLE
    assert table(2, 0) == Fraction(37, 11)
    assert table(3, 2) == Fraction(160, 33)
    assert table.satisfies_total_mass()


def test_bipartite_1_2_table(evaluator, cb):
    table = evaluator.table(cb)
    assert table.by_syndrome_weight() == CB_TABLE
    assert table.satisfies_total_mass()


def test_bipartite_table_matches_pointwise():
    table = bipartite_table(2, 4, 6, 3)
    for w in range(7):
        for sigma in range(4):
            assert table(w, sigma) == bipartite_acwd(2, 4, 6, 3, sigma, w)


def test_weight_distribution(evaluator, ca):
    assert evaluator.table(ca).weight_distribution() == tuple(CA_TABLE[0])


@pytest.mark.parametrize(
    "params",
    [
        dict(j=2, k=4, n=6, m=4),
        dict(j=3, k=6, n=12, m=5),
    ],
)
def test_bipartite_rejects_inconsistent_sizes(params):
    with pytest.raises(ParameterError):
        Bipartite(**params)


def test_params_validation():
    with pytest.raises(ParameterError):
        Gallager(2, 4, 6, 3)  # j does not divide m
    with pytest.raises(ParameterError):
        ConstantRow(5, 4, 2)
    with pytest.raises(ParameterError):
        SingleMatrix(("10", "01"), copies=0)
    assert Gallager(3, 4, 8, 6).tiers == (2, 2, 2)
    assert Bipartite(3, 6, 12, 6).design_rate == 0.5


# ---------- Gallager ----------
def test_gallager_depends_on_tier_weights():
    # j=2, k=2, n=4, m=4: tier 0 is rows 0-1, tier 1 rows 2-3
    a = gallager_acwd(2, 2, 4, 4, "1000", 1)
    b = gallager_acwd(2, 2, 4, 4, "0100", 1)
    c = gallager_acwd(2, 2, 4, 4, "1100", 1)
    assert a == b
    # one odd row per tier is needed for a weight-1 word
    assert a == 0
    assert gallager_acwd(2, 2, 4, 4, "1010", 1) == Fraction(1)
    assert c == 0


def test_gallager_total_mass():
    j, k, n, m = 2, 3, 6, 4
    for w in range(n + 1):
        total = sum(gallager_acwd(j, k, n, m, s, w) for s in range(1 << m))
        assert total == comb(n, w)


def test_gallager_evaluator_matches_closed_form(evaluator):
    expr = gallager(2, 2, 4, 4)
    for s in range(16):
        for w in range(5):
            assert evaluator.acwd(expr, s, w) == gallager_acwd(2, 2, 4, 4, s, w)


def test_row_shuffled_gallager_is_syndrome_average(evaluator):
    j, k, n, m = 2, 3, 6, 4
    for sigma in range(m + 1):
        for w in range(n + 1):
            direct = sum(gallager_acwd(j, k, n, m, s, w) for s in weight_class(m, sigma)) / comb(m, sigma)
            assert row_shuffled_gallager_acwd(j, k, n, m, sigma, w) == direct
    expr = row_shuffle(gallager(j, k, n, m))
    assert evaluator.table(expr).satisfies_total_mass()


# ---------- constant row weight ----------
def test_gamma():
    # a weight-2 row of length 4 is orthogonal to a weight-1 word iff it avoids it
    assert gamma(4, 2, 1) == Fraction(3, 6)
    assert gamma(4, 2, 0) == 1


def test_constant_row_example(evaluator):
    expr = constant_row(2, 4, 2)
    assert evaluator.row_symmetric_acwd(expr, 0, 1) == 4 * Fraction(1, 2) ** 2
    assert constant_row_acwd(2, 4, 2, "11", 2) == 6 * Fraction(2, 3) ** 2
    assert evaluator.table(expr).satisfies_total_mass()


# ---------- explicit matrices ----------
def test_single_matrix_cwd():
    rows = ["110", "011"]
    assert single_matrix_cwd(rows, "00") == (1, 0, 0, 1)
    assert single_matrix_cwd(rows, "10") == (0, 1, 1, 0)


def test_single_matrix_budget():
    rows = ["1" * 30]
    with pytest.raises(BudgetError):
        single_matrix_cwd(rows, "0", budgets=Budgets(max_enumeration_bits=24))


def test_block_diagonal_matches_scan(evaluator):
    rows = ["110", "011"]
    params = SingleMatrix(tuple(rows), copies=2)
    expr = single_matrix(rows, copies=2)
    for s in range(1 << 4):
        product = block_diagonal_cwd(rows, 2, s)
        assert product == single_matrix_cwd(params.block_rows(), s)
        assert tuple(evaluator.acwd(expr, s, w) for w in range(7)) == product


def test_single_matrix_total(evaluator):
    expr = single_matrix(["1011", "0110"])
    for w in range(5):
        assert sum(evaluator.acwd(expr, s, w) for s in range(4)) == comb(4, w)


def test_bipartite_through_expression(evaluator):
    expr = bipartite(1, 2, 4, 2)
    table = evaluator.table(expr)
    assert table(2, 0) == Fraction(2)
    assert table.satisfies_total_mass()
