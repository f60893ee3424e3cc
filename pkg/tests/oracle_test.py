from fractions import Fraction
from math import factorial

import pytest

from ldpc_acwd import (
    Budgets,
    bipartite,
    col_shuffle,
    concat,
    constant_row,
    gallager,
    row_shuffle,
    single_matrix,
    stack,
)
from ldpc_acwd.exceptions import BudgetError, ParameterError
from ldpc_acwd.oracle import (
    accumulated_cwd,
    acwd_bruteforce,
    bruteforce_distribution,
    coset_weight,
    enumerate_bipartite,
    enumerate_constant_row,
    enumerate_expr,
    enumerate_gallager,
)


def assert_matches_closed_form(evaluator, expr, budgets=None):
    members = enumerate_expr(expr, budgets)
    brute = bruteforce_distribution(members, budgets)
    for w in range(expr.n + 1):
        for s in range(1 << expr.m):
            assert brute[w][s] == evaluator.acwd(expr, s, w), (w, s)


def test_socket_model_size():
    e = enumerate_bipartite(1, 2, 4, 2)
    assert len(e) == factorial(4)
    assert e.size == sum(1 for _ in e)


def test_constant_row_size():
    assert len(enumerate_constant_row(2, 4, 2)) == 36


def test_gallager_size():
    assert len(enumerate_gallager(2, 2, 4, 4)) == factorial(4) ** 2


@pytest.mark.parametrize(
    "expr",
    [
        bipartite(1, 2, 4, 2),
        constant_row(2, 4, 2),
        gallager(2, 2, 4, 4),
        bipartite(2, 2, 3, 3),
    ],
    ids=str,
)
def test_base_ensembles(evaluator, expr):
    assert_matches_closed_form(evaluator, expr)


@pytest.mark.parametrize(
    "expr",
    [
        stack(single_matrix(["1100", "0011"]), bipartite(1, 2, 4, 2)),
        concat(single_matrix(["101", "011"]), col_shuffle(single_matrix(["110", "001"]))),
        concat(single_matrix(["11", "01"]), bipartite(1, 2, 4, 2)),
        row_shuffle(single_matrix(["1100", "0110", "0011"])),
        col_shuffle(single_matrix(["1010", "0110"])),
        row_shuffle(stack(bipartite(1, 2, 4, 2), single_matrix(["1001"]))),
        single_matrix(["110", "011"], copies=2),
    ],
    ids=str,
)
def test_single_matrix_compositions(evaluator, expr):
    assert_matches_closed_form(evaluator, expr)


def test_row_shuffled_gallager(evaluator):
    assert_matches_closed_form(evaluator, row_shuffle(gallager(2, 2, 4, 4)))


@pytest.mark.slow
def test_type2_concatenation(evaluator):
    left = stack(bipartite(1, 2, 4, 2), constant_row(2, 4, 2))
    right = stack(constant_row(1, 2, 2), bipartite(2, 2, 2, 2))
    assert_matches_closed_form(evaluator, concat(left, right))


def test_pointwise_bruteforce(evaluator):
    expr = bipartite(1, 2, 4, 2)
    e = enumerate_expr(expr)
    assert acwd_bruteforce(e, "00", 2) == evaluator.acwd(expr, "00", 2)
    assert acwd_bruteforce(e, "11", 2) == evaluator.acwd(expr, "11", 2)
    with pytest.raises(ParameterError):
        acwd_bruteforce(e, "00", 5)


# ---------- budgets ----------
def test_socket_budget():
    with pytest.raises(BudgetError):
        enumerate_bipartite(3, 6, 12, 6)


def test_member_budget():
    with pytest.raises(BudgetError):
        enumerate_gallager(2, 2, 4, 4, budgets=Budgets(max_members=100))


def test_oracle_work_budget():
    e = enumerate_constant_row(2, 4, 2)
    with pytest.raises(BudgetError):
        bruteforce_distribution(e, budgets=Budgets(max_oracle_work=10))


def test_budget_from_environment(monkeypatch):
    monkeypatch.setenv("ACWD_MAX_SOCKET_COUNT", "3")
    with pytest.raises(BudgetError):
        enumerate_bipartite(1, 2, 4, 2)


def test_budget_environment_must_be_integer(monkeypatch):
    monkeypatch.setenv("ACWD_MAX_MEMBERS", "many")
    with pytest.raises(ParameterError):
        Budgets.from_env()


# ---------- single matrices ----------
def test_coset_weight():
    rows = ["110", "011"]
    assert coset_weight(rows, "00") == 0
    assert coset_weight(rows, "10") == 1
    assert coset_weight(rows, "11") == 1


def test_empty_coset():
    # rows 0 and 1 are equal, so syndromes 10 and 01 are unreachable
    assert coset_weight(["11", "11"], "10") is None


def test_accumulated_distribution(evaluator):
    rows = ["1100", "0110", "0011"]
    expr = single_matrix(rows)
    for s in range(8):
        for tau in range(5):
            assert evaluator.accumulated_acwd(expr, s, tau) == accumulated_cwd(rows, s, tau)


def test_markov_bound(evaluator):
    expr = bipartite(2, 4, 6, 3)
    # s = 000 always contains the zero word
    assert evaluator.markov_bound(expr, "000", 2) == 1
    assert evaluator.accumulated_acwd(expr, "110", 1) == Fraction(16, 11)
    assert evaluator.markov_bound(expr, "110", 1) == 1
    assert evaluator.markov_bound(expr, "110", 0) == 0
    assert evaluator.markov_bound(expr, "100", 6) == 0
