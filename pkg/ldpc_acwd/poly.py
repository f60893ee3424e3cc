"""
Exact univariate polynomials over the rationals and the combinatorial
helpers every ACWD formula is built from.

Coefficients are fractions.Fraction, indexed by degree. Nothing in this
module touches floating point except DensePoly.as_float_coeffs(), which the
asymptotic layer uses to evaluate alpha_k / beta_k at real points.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Tuple, Union

import numpy as np

from .exceptions import ParameterError

Number = Union[int, Fraction]


def binom(n: int, k: int) -> int:
    """C(n, k), zero outside 0 <= k <= n."""
    if n < 0:
        raise ParameterError(f"binom needs n >= 0, got n={n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def multinom(total: int, parts: Sequence[int]) -> int:
    """total! / prod(parts_i!), parts must sum to total."""
    if any(p < 0 for p in parts):
        raise ParameterError(f"multinom parts must be nonnegative, got {list(parts)}")
    if sum(parts) != total:
        raise ParameterError(f"multinom parts {list(parts)} do not sum to {total}")
    out = 1
    remaining = total
    for p in parts:
        out *= math.comb(remaining, p)
        remaining -= p
    return out


def _normalize(coeffs: Iterable[Number]) -> Tuple[Fraction, ...]:
    values = [Fraction(c) for c in coeffs]
    while values and values[-1] == 0:
        values.pop()
    return tuple(values)


def _convolve(a: Sequence[Number], b: Sequence[Number], max_degree: Optional[int]) -> list:
    if not a or not b:
        return []
    top = len(a) + len(b) - 2
    if max_degree is not None:
        top = min(top, max_degree)
    out = [0] * (top + 1)
    for i, ai in enumerate(a):
        if i > top:
            break
        if not ai:
            continue
        for j in range(min(len(b), top - i + 1)):
            bj = b[j]
            if bj:
                out[i + j] += ai * bj
    return out


class DensePoly:
    """
    Immutable dense polynomial with Fraction coefficients.

    The zero polynomial has no coefficients and degree -1.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        object.__setattr__(self, "_coeffs", _normalize(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("DensePoly is immutable")

    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self._coeffs)

    def coeff(self, w: int) -> Fraction:
        if w < 0:
            raise ParameterError(f"coefficient index must be >= 0, got {w}")
        if w >= len(self._coeffs):
            return Fraction(0)
        return self._coeffs[w]

    def lowest_degree(self) -> int:
        for i, c in enumerate(self._coeffs):
            if c:
                return i
        return -1

    def truncate(self, max_degree: int) -> "DensePoly":
        return DensePoly(self._coeffs[: max_degree + 1])

    def derivative(self) -> "DensePoly":
        return DensePoly(i * c for i, c in enumerate(self._coeffs) if i > 0)

    def as_float_coeffs(self) -> np.ndarray:
        """Ascending float coefficients for numpy.polynomial evaluation."""
        return np.array([float(c) for c in self._coeffs], dtype=float)

    def __add__(self, other: "DensePoly") -> "DensePoly":
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        return DensePoly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    def __sub__(self, other: "DensePoly") -> "DensePoly":
        return self + DensePoly(-c for c in other._coeffs)

    def __mul__(self, other: Union["DensePoly", Number]) -> "DensePoly":
        if isinstance(other, DensePoly):
            return poly_mul(self, other)
        return DensePoly(c * other for c in self._coeffs)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "DensePoly":
        return poly_pow(self, exponent)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DensePoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        return f"DensePoly({[str(c) for c in self._coeffs]})"


ZERO = DensePoly()
ONE = DensePoly([1])


def poly_mul(p: DensePoly, q: DensePoly, max_degree: Optional[int] = None) -> DensePoly:
    """Product p*q, optionally dropping every term above max_degree."""
    if p.is_integral() and q.is_integral():
        # int convolution is several times faster than Fraction arithmetic
        a = [c.numerator for c in p.coeffs]
        b = [c.numerator for c in q.coeffs]
        return DensePoly(_convolve(a, b, max_degree))
    return DensePoly(_convolve(p.coeffs, q.coeffs, max_degree))


def poly_pow(p: DensePoly, exponent: int, max_degree: Optional[int] = None) -> DensePoly:
    """p**exponent by repeated squaring, optionally truncated above max_degree."""
    if exponent < 0:
        raise ParameterError(f"poly_pow needs a nonnegative integer exponent, got {exponent}")
    result = ONE
    base = p if max_degree is None else p.truncate(max_degree)
    while exponent:
        if exponent & 1:
            result = poly_mul(result, base, max_degree)
        exponent >>= 1
        if exponent:
            base = poly_mul(base, base, max_degree)
    return result


def coeff_at(p: DensePoly, w: int) -> Fraction:
    """[p(x)]_w, the coefficient of x^w."""
    return p.coeff(w)


@lru_cache(maxsize=None)
def alpha_poly(k: int) -> DensePoly:
    """Weight enumerator of the even weight code of length k, ((1+x)^k + (1-x)^k)/2."""
    if k < 1:
        raise ParameterError(f"alpha_poly needs k >= 1, got {k}")
    return DensePoly(math.comb(k, i) if i % 2 == 0 else 0 for i in range(k + 1))


@lru_cache(maxsize=None)
def beta_poly(k: int) -> DensePoly:
    """Weight enumerator of the odd weight code of length k, ((1+x)^k - (1-x)^k)/2."""
    if k < 1:
        raise ParameterError(f"beta_poly needs k >= 1, got {k}")
    return DensePoly(math.comb(k, i) if i % 2 == 1 else 0 for i in range(k + 1))


@lru_cache(maxsize=4096)
def _cached_power(kind: str, k: int, exponent: int, max_degree: Optional[int]) -> DensePoly:
    base = alpha_poly(k) if kind == "alpha" else beta_poly(k)
    return poly_pow(base, exponent, max_degree)


@lru_cache(maxsize=4096)
def enumerator_power(k: int, even: int, odd: int, max_degree: Optional[int] = None) -> DensePoly:
    """
    alpha_k(x)^even * beta_k(x)^odd.

    Coefficient t counts the weight-t configurations of even+odd disjoint
    length-k rows where exactly the last `odd` rows have odd parity.
    """
    if even < 0 or odd < 0:
        raise ParameterError(f"enumerator_power exponents must be >= 0, got ({even}, {odd})")
    a = _cached_power("alpha", k, even, max_degree)
    b = _cached_power("beta", k, odd, max_degree)
    return poly_mul(a, b, max_degree)
