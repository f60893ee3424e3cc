from fractions import Fraction

import pytest

from ldpc_acwd.exceptions import ParameterError
from ldpc_acwd.poly import (
    ONE,
    ZERO,
    DensePoly,
    alpha_poly,
    beta_poly,
    binom,
    coeff_at,
    enumerator_power,
    multinom,
    poly_mul,
    poly_pow,
)
from ldpc_acwd.utils import (
    columns_from_rows,
    part_weights,
    rational_from_str,
    rational_to_str,
    rows_from_columns,
    split_syndrome,
    syndrome_bits,
    to_syndrome,
    word_syndromes,
    word_weights,
)


def test_binomials():
    assert binom(6, 2) == 15
    assert binom(3, 5) == 0
    assert binom(4, -1) == 0
    with pytest.raises(ParameterError):
        binom(-1, 0)


def test_multinomials():
    assert multinom(3, [1, 1, 1]) == 6
    assert multinom(4, [2, 2]) == 6
    with pytest.raises(ParameterError):
        multinom(4, [2, 1])
    with pytest.raises(ParameterError):
        multinom(1, [2, -1])


def test_alpha_beta_small():
    assert alpha_poly(4).coeffs == (1, 0, 6, 0, 1)
    assert beta_poly(4).coeffs == (0, 4, 0, 4)
    assert alpha_poly(1) == ONE
    assert beta_poly(2).coeffs == (0, 2)


@pytest.mark.parametrize("k", [1, 2, 3, 6, 9])
def test_alpha_plus_beta_is_binomial(k):
    assert alpha_poly(k) + beta_poly(k) == DensePoly([1, 1]) ** k


@pytest.mark.parametrize("k", [2, 4, 5])
def test_alpha_minus_beta_is_signed_binomial(k):
    assert alpha_poly(k) - beta_poly(k) == DensePoly([1, -1]) ** k


def test_mul_and_pow_agree():
    p = DensePoly([1, Fraction(1, 2), 3])
    assert poly_pow(p, 3) == poly_mul(poly_mul(p, p), p)
    assert p ** 0 == ONE
    assert (p * ZERO).is_zero()
    assert (2 * p).coeff(1) == 1


def test_truncated_power_keeps_low_terms():
    p = DensePoly([1, 1])
    full = poly_pow(p, 10)
    cut = poly_pow(p, 10, max_degree=4)
    assert cut.degree == 4
    assert all(cut.coeff(i) == full.coeff(i) for i in range(5))


def test_coefficients_out_of_range():
    p = DensePoly([0, 1])
    assert coeff_at(p, 7) == 0
    assert p.lowest_degree() == 1
    assert ZERO.degree == -1
    with pytest.raises(ParameterError):
        p.coeff(-1)


def test_enumerator_power_counts_parity_patterns():
    # one even and one odd row of length 2: weight 1 puts a single 1 in the odd row
    poly = enumerator_power(2, 1, 1)
    assert poly == alpha_poly(2) * beta_poly(2)
    assert poly.coeff(1) == 2
    assert poly.coeff(3) == 2


def test_derivative():
    assert DensePoly([5, 3, 0, 2]).derivative() == DensePoly([3, 0, 6])
    assert ONE.derivative().is_zero()


def test_immutable():
    with pytest.raises(AttributeError):
        ONE.foo = 1


# ---------- syndrome helpers ----------
def test_syndrome_bit_order():
    assert to_syndrome("100", 3) == 1
    assert to_syndrome([0, 0, 1], 3) == 4
    assert syndrome_bits(6, 3) == "011"
    assert to_syndrome(5, 3) == 5


@pytest.mark.parametrize("bad", ["10", "1a0", [0, 2, 1], 8, True])
def test_syndrome_rejects(bad):
    with pytest.raises(ParameterError):
        to_syndrome(bad, 3)


def test_split_syndrome_low_bits_first():
    s = to_syndrome("11" + "010", 5)
    assert split_syndrome(s, [2, 3]) == [3, 2]
    assert part_weights(s, [2, 3]) == (2, 1)


def test_rational_strings():
    assert rational_to_str(Fraction(128, 33)) == "128/33"
    assert rational_to_str(Fraction(63)) == "63"
    assert rational_from_str("3880/33") == Fraction(3880, 33)
    with pytest.raises(ParameterError):
        rational_from_str("1/0")


def test_matrix_columns():
    rows = ("110", "011")
    columns = columns_from_rows(rows)
    assert columns == (1, 3, 2)
    assert rows_from_columns(columns, 2) == rows
    with pytest.raises(ParameterError):
        columns_from_rows(["11", "1"])


def test_word_tables():
    syn = word_syndromes((1, 3, 2))
    wt = word_weights(3)
    assert list(wt) == [0, 1, 1, 2, 1, 2, 2, 3]
    # word 0b011 sets columns 0 and 1: 1 ^ 3 = 2
    assert syn[3] == 2
