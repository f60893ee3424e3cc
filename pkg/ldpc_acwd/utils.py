from fractions import Fraction
from itertools import combinations
from typing import Iterator, List, Sequence, Tuple, Union

import numpy as np

from .exceptions import ParameterError

SyndromeLike = Union[str, int, Sequence[int]]


def to_syndrome(data: SyndromeLike, m: int) -> int:
    """
    Normalize a syndrome to its integer form (bit i is row i).

    Args:
        data: Either
            - a bit string such as "101", read left to right as rows 0..m-1,
            - a sequence of 0/1 values, one per row,
            - an int already in bit form.
        m: the row size the syndrome must match.

    Returns:
        int with bit i set when row i of the syndrome is 1.
    """
    if isinstance(data, bool):
        raise ParameterError("Unsupported syndrome type: bool")

    if isinstance(data, int):
        if data < 0 or data >> m:
            raise ParameterError(f"Syndrome {data} does not fit in {m} rows")
        return data

    if isinstance(data, str):
        bits = [c for c in data if not c.isspace()]
        if any(c not in "01" for c in bits):
            raise ParameterError(f"Syndrome string {data!r} must contain only 0 and 1")
        values = [int(c) for c in bits]
    else:
        values = [int(v) for v in data]
        if any(v not in (0, 1) for v in values):
            raise ParameterError(f"Syndrome entries must be 0 or 1, got {list(data)}")

    if len(values) != m:
        raise ParameterError(f"Syndrome has length {len(values)}, expected {m}")

    return sum(v << i for i, v in enumerate(values))


def syndrome_bits(s: int, m: int) -> str:
    return "".join("1" if (s >> i) & 1 else "0" for i in range(m))


def popcount(x: int) -> int:
    return bin(x).count("1")


def split_syndrome(s: int, part_sizes: Sequence[int]) -> List[int]:
    """Cut s into consecutive row blocks of the given sizes (first block = lowest bits)."""
    parts = []
    for size in part_sizes:
        parts.append(s & ((1 << size) - 1))
        s >>= size
    return parts


def part_weights(s: int, part_sizes: Sequence[int]) -> Tuple[int, ...]:
    return tuple(popcount(p) for p in split_syndrome(s, part_sizes))


def weight_class(m: int, sigma: int) -> Iterator[int]:
    """Yields every m-bit syndrome of weight sigma."""
    for rows in combinations(range(m), sigma):
        yield sum(1 << r for r in rows)


def rational_to_str(value: Fraction) -> str:
    """'p/q' for proper fractions, 'p' for integers; Fraction(str) parses both back."""
    return str(Fraction(value))


def rational_from_str(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParameterError(f"Not a rational literal: {text!r}")


def format_float(value: float, digits: int = 12) -> str:
    """Float rendering used by CSV outputs; -inf stays the literal token '-inf'."""
    if value == float("-inf"):
        return "-inf"
    return f"{value:.{digits}g}"


def columns_from_rows(rows: Sequence[str]) -> Tuple[int, ...]:
    """
    Convert a bit matrix given as row strings into column masks.

    Args:
        rows: one bit string per row, all of equal length n.

    Returns:
        tuple of n ints; bit i of column c is entry (i, c).
    """
    if not rows:
        raise ParameterError("A matrix needs at least one row")
    n = len(rows[0])
    if n == 0:
        raise ParameterError("A matrix needs at least one column")
    columns = [0] * n
    for i, row in enumerate(rows):
        if len(row) != n:
            raise ParameterError(f"Row {i} has length {len(row)}, expected {n}")
        for c, bit in enumerate(row):
            if bit == "1":
                columns[c] |= 1 << i
            elif bit != "0":
                raise ParameterError(f"Row {i} contains {bit!r}; rows are 0/1 strings")
    return tuple(columns)


def rows_from_columns(columns: Sequence[int], m: int) -> Tuple[str, ...]:
    return tuple("".join("1" if (col >> i) & 1 else "0" for col in columns) for i in range(m))


def word_syndromes(columns: Sequence[int]) -> np.ndarray:
    """
    Syndromes of all 2^n words; entry x holds H x^t for the word whose bit c is x_c.

    Built by doubling: appending column c xors it onto the upper half.
    """
    syn = np.zeros(1, dtype=np.int64)
    for col in columns:
        syn = np.concatenate([syn, syn ^ col])
    return syn


def word_weights(n: int) -> np.ndarray:
    """Hamming weights of all 2^n words, in the order used by word_syndromes."""
    wt = np.zeros(1, dtype=np.int64)
    for _ in range(n):
        wt = np.concatenate([wt, wt + 1])
    return wt
