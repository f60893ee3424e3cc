from collections import Counter
from fractions import Fraction
from math import comb

import pytest
from conftest import SHUFFLED_STACK_TABLE, CONCAT_TABLE

from ldpc_acwd import (
    Budgets,
    EnsembleEvaluator,
    bipartite,
    col_shuffle,
    concat,
    constant_row,
    gallager,
    row_shuffle,
    single_matrix,
    stack,
)
from ldpc_acwd.ensembles.combinators import (
    col_shuffle_acwd,
    compositions,
    concat_row_symmetric_acwd,
    split_row_shuffle_acwd,
    stack_acwd,
    stack_product,
    stacked_row_shuffled_acwd,
    weight_splits,
)
from ldpc_acwd.ensembles.expr import validate_type1, validate_type2
from ldpc_acwd.evaluation.row_symmetric import coarsen, common_refinement
from ldpc_acwd.exceptions import BudgetError, ShapeError, SymmetryError


def test_shuffled_stack_table(evaluator, ca, cb):
    expr = row_shuffle(stack(ca, cb))
    table = evaluator.table(expr)
    assert table.by_syndrome_weight() == SHUFFLED_STACK_TABLE
    assert table(2, 0) == Fraction(37, 55)
    assert table(3, 5) == Fraction(32, 33)
    assert table.satisfies_total_mass()


def test_concatenation_table(evaluator, ca, cb):
    expr = concat(ca, cb)
    table = evaluator.table(expr)
    assert (table.n, table.m) == (12, 3)
    assert table.by_syndrome_weight() == CONCAT_TABLE
    assert table(4, 0) == 63
    assert table(3, 3) == Fraction(344, 11)
    assert table(6, 1) == Fraction(3880, 33)
    assert table.satisfies_total_mass()


def test_split_weight_sums_to_concatenation(evaluator, ca, cb):
    expr = concat(ca, cb)
    table = evaluator.table(expr)
    for sigma in range(4):
        for w in range(13):
            split = sum(evaluator.split_weight_acwd(expr, sigma, w1, w - w1) for w1 in range(w + 1))
            assert split == table(w, sigma)


def test_full_syndrome_split_sums_to_concatenation(evaluator, ca, cb):
    expr = concat(ca, cb)
    for s in ("000", "100", "110", "111"):
        for w in (0, 3, 6, 9):
            split = sum(evaluator.split_concat_acwd(expr, s, w1, w - w1) for w1 in range(w + 1))
            assert split == evaluator.acwd(expr, s, w)
            assert split == evaluator.concat_acwd(expr, s, w)


def test_split_weight_out_of_range_is_zero(evaluator, ca, cb):
    assert evaluator.split_weight_acwd(concat(ca, cb), 0, 7, 0) == 0


def test_split_weight_needs_concatenation(evaluator, ca):
    with pytest.raises(SymmetryError):
        evaluator.split_weight_acwd(ca, 0, 1, 1)


def test_column_shuffle_is_transparent(evaluator, ca, cb):
    assert evaluator.table(col_shuffle(concat(ca, cb))) == evaluator.table(concat(ca, cb))


def test_row_shuffle_of_row_symmetric_is_identity(evaluator, ca):
    assert evaluator.table(row_shuffle(ca)) == evaluator.table(ca)


def test_concatenation_is_associative(evaluator, cb):
    left = concat(concat(cb, cb), cb)
    flat = concat(cb, cb, cb)
    for sigma in range(4):
        for w in range(19):
            assert evaluator.row_symmetric_acwd(left, sigma, w) == evaluator.row_symmetric_acwd(flat, sigma, w)


# ---------- stacks ----------
def test_stack_split_form_is_product(evaluator, ca, cb):
    expr = stack(ca, cb)
    ta, tb = evaluator.table(ca), evaluator.table(cb)
    for w in range(7):
        for s1 in range(4):
            for s2 in range(4):
                expected = ta(w, s1) * tb(w, s2) / comb(6, w)
                assert evaluator.split_acwd(expr, (s1, s2), w) == expected


def test_stack_with_one_unstructured_block(evaluator):
    expr = stack(single_matrix(["1100", "0011"]), bipartite(1, 2, 4, 2))
    assert evaluator.split_partition(expr) is None
    for w in range(5):
        assert sum(evaluator.acwd(expr, s, w) for s in range(16)) == comb(4, w)


def test_stack_builds_child_table_once(evaluator, monkeypatch):
    block = single_matrix(["1100", "0011"])
    expr = stack(block, bipartite(1, 2, 4, 2))
    calls = Counter()
    compute = evaluator._compute_syndrome_table

    def counting(node):
        calls[node] += 1
        return compute(node)

    monkeypatch.setattr(evaluator, "_compute_syndrome_table", counting)
    evaluator.syndrome_table(expr)
    assert calls[block] == 1
    assert calls[expr] == 1


def test_memo_fills_and_clears(evaluator, ca):
    assert evaluator.cache_size == 0
    first = evaluator.table(ca)
    assert evaluator.cache_size > 0
    evaluator.clear_cache()
    assert evaluator.cache_size == 0
    assert evaluator.table(ca) == first


def test_stack_of_two_unstructured_blocks_is_rejected(evaluator):
    expr = stack(single_matrix(["1100"]), single_matrix(["0110"]))
    with pytest.raises(SymmetryError):
        evaluator.acwd(expr, 0, 0)


def test_stack_shape_mismatch(ca):
    with pytest.raises(ShapeError):
        stack(ca, bipartite(1, 2, 4, 2))
    with pytest.raises(ShapeError):
        concat(ca, bipartite(1, 2, 4, 2))


def test_gallager_stack_partition(evaluator, cb):
    expr = stack(gallager(2, 3, 6, 4), cb)
    assert evaluator.split_partition(expr) == (2, 2, 3)
    tensor = evaluator.split_tensor(expr)
    assert tensor.satisfies_total_mass()


# ---------- combined ensembles ----------
def test_type1_components(evaluator, ca, cb):
    expr = concat(row_shuffle(stack(ca, cb)), row_shuffle(stack(cb, ca)))
    assert validate_type1(expr) == ["shuffled_stack", "shuffled_stack"]
    table = evaluator.type1_table(expr)
    assert (table.n, table.m) == (12, 6)
    assert table.satisfies_total_mass()


def test_type1_mixed_components(evaluator, ca, cb):
    expr = concat(row_shuffle(stack(ca, cb)), bipartite(2, 2, 6, 6))
    assert validate_type1(expr) == ["shuffled_stack", "row_symmetric"]
    assert evaluator.type1_acwd(expr, 0, 0) == 1


def test_type1_rejects_plain_stack(ca, cb):
    with pytest.raises(ShapeError):
        validate_type1(concat(stack(ca, cb), stack(cb, ca)))


def test_type2_tensor_total_mass(evaluator):
    left = stack(bipartite(1, 2, 4, 2), constant_row(2, 4, 2))
    right = stack(constant_row(1, 2, 2), bipartite(2, 2, 2, 2))
    expr = concat(left, right)
    assert validate_type2(expr) == (2, 2)
    tensor = evaluator.type2_tensor(expr)
    assert tensor.part_sizes == (2, 2)
    assert tensor.satisfies_total_mass()
    for s in range(16):
        sigmas = (bin(s & 3).count("1"), bin(s >> 2).count("1"))
        for w in range(7):
            assert evaluator.type2_acwd(expr, sigmas, w) == tensor(w, sigmas)


def test_type2_split_matches_full_syndrome(evaluator):
    left = stack(bipartite(1, 2, 4, 2), constant_row(2, 4, 2))
    right = stack(constant_row(1, 2, 2), bipartite(2, 2, 2, 2))
    expr = concat(left, right)
    for s in range(16):
        for w in range(7):
            via_split = evaluator.acwd(expr, s, w)
            direct = sum(evaluator.split_concat_acwd(expr, s, w1, w - w1) for w1 in range(w + 1))
            assert via_split == direct


def test_type2_rejects_row_shuffle_inside_stack(ca, cb):
    expr = concat(stack(row_shuffle(ca), cb), stack(cb, ca))
    with pytest.raises(ShapeError):
        validate_type2(expr)


def test_type2_rejects_partition_mismatch():
    left = stack(bipartite(1, 2, 4, 2), constant_row(2, 4, 2))
    right = stack(constant_row(1, 2, 1), constant_row(1, 2, 3))
    with pytest.raises(ShapeError):
        validate_type2(concat(left, right))


def test_refined_partition_coarsens(evaluator, ca, cb):
    expr = stack(ca, cb)
    assert evaluator.split_acwd(expr, (1, 0, 2, 0), 2, partition=(1, 2, 2, 1)) == evaluator.split_acwd(
        expr, (1, 2), 2
    )


# ---------- row shuffles of structured children ----------
def test_row_shuffled_stack_matches_syndrome_average(evaluator):
    child = stack(bipartite(1, 2, 4, 2), constant_row(2, 4, 2))
    fast = evaluator.table(row_shuffle(child))
    for sigma in range(5):
        for w in range(5):
            slow = sum(
                evaluator.acwd(child, s, w) for s in range(16) if bin(s).count("1") == sigma
            ) / comb(4, sigma)
            assert fast(w, sigma) == slow


def test_row_shuffle_of_unstructured_child(evaluator):
    expr = row_shuffle(single_matrix(["1100", "0110", "0011"]))
    table = evaluator.table(expr)
    assert table.satisfies_total_mass()
    # the code is {0000, 1111}
    assert table(4, 0) == 1


def test_row_shuffle_budget():
    evaluator = EnsembleEvaluator(budgets=Budgets(max_syndrome_bits=2))
    expr = row_shuffle(single_matrix(["1100", "0110", "0011"]))
    with pytest.raises(BudgetError):
        evaluator.table(expr)


# ---------- formula helpers ----------
def test_weight_splits():
    assert list(weight_splits(5, 3, 4)) == [1, 2, 3]


def test_compositions():
    assert sorted(compositions(2, (1, 2))) == [(0, 2), (1, 1)]
    assert list(compositions(4, (1, 2))) == []


def test_split_row_shuffle_with_single_part():
    values = {0: Fraction(1), 1: Fraction(2), 2: Fraction(3)}
    assert split_row_shuffle_acwd(lambda sg, w: values[sg[0]], (2,), 1, 0) == 2


def test_stack_product():
    assert stack_product([Fraction(2), Fraction(3)], 4, 1) == Fraction(6, 4)


def test_partitions():
    assert common_refinement([(3, 3), (2, 4)]) == (2, 1, 3)
    assert coarsen((2, 1, 3), (3, 3), (1, 1, 2)) == (2, 2)


# ---------- formulas on plain callables ----------
def test_stack_formula(evaluator, ca, cb):
    ta, tb = evaluator.table(ca), evaluator.table(cb)
    children = [lambda s, w: ta(w, bin(s).count("1")), lambda s, w: tb(w, bin(s).count("1"))]
    # first block in the low bits: weight 1 on top, weight 2 below
    s = 0b110010
    for w in range(7):
        expected = ta(w, 1) * tb(w, 2) / comb(6, w)
        assert stack_acwd(children, (3, 3), 6, s, w) == expected
        assert evaluator.acwd(stack(ca, cb), s, w) == expected


def test_stacked_row_shuffled_formula(evaluator, ca, cb):
    ta, tb = evaluator.table(ca), evaluator.table(cb)
    children = [lambda sg, w: ta(w, sg), lambda sg, w: tb(w, sg)]
    assert stacked_row_shuffled_acwd(children, (3, 3), 6, 0, 2) == Fraction(37, 55)
    assert stacked_row_shuffled_acwd(children, (3, 3), 6, 5, 3) == Fraction(32, 33)


def test_concat_row_symmetric_formula(evaluator, ca, cb):
    ta, tb = evaluator.table(ca), evaluator.table(cb)
    value = concat_row_symmetric_acwd(lambda sg, w: ta(w, sg), lambda sg, w: tb(w, sg), 3, 6, 6, 0, 4)
    assert value == 63


def test_col_shuffle_formula():
    def child(s, w):
        return Fraction(s + w)

    assert col_shuffle_acwd(child)(3, 2) == 5
