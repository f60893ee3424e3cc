"""
Asymptotic growth rates (AGR) of ACWDs.

    b_l(eta) = lim (1/n) log2 B~_{ln}(eta (1-R) n)

For the (j,k)-regular bipartite ensemble the limit has a closed form through
the saddle point r of f(x) = alpha_k(x)^(1-eta) beta_k(x)^eta:

    r f'(r) / f(r) = l k
    b = (j/k) ((1-eta) log2 alpha_k(r) + eta log2 beta_k(r) - l k log2 r) - (j-1) H(l)

Everything here is float64; NEG_INFINITY marks structurally zero coefficients.
Saddle points are located in u = ln x so one bracket covers every scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence, Tuple, Union

import numpy as np
import numpy.polynomial.polynomial as P
from scipy import optimize, special

from . import log
from .config import Budgets
from .ensembles.closed_forms import bipartite_acwd
from .ensembles.params import Bipartite
from .exceptions import BudgetError, CertificateError, NoCrossingError, ParameterError, SaddlePointError
from .poly import DensePoly, alpha_poly, beta_poly

NEG_INFINITY = float("-inf")
AgrValue = float
ArrayLike = Union[float, np.ndarray]

U_BRACKET = 300.0
BISECTION_STEPS = 120
BOUNDARY_TOL = 1e-12
# stands in for -inf wherever a root finder needs finite values
NEG_FLOOR = -1e3

logger = log._AcwdLogger("ASYMPTOTIC", log.acwd_logger)


def binary_entropy(x: ArrayLike) -> ArrayLike:
    """H(x) in bits with H(0) = H(1) = 0; accepts scalars or arrays."""
    arr = np.asarray(x, dtype=float)
    if np.any((arr < 0) | (arr > 1)) or np.any(np.isnan(arr)):
        raise ParameterError(f"binary entropy needs 0 <= x <= 1, got {x}")
    out = (special.entr(arr) + special.entr(1.0 - arr)) / math.log(2)
    return float(out) if out.ndim == 0 else out


class _EnumeratorFloats:
    """Float view of alpha_k or beta_k: log2 p(e^u) and x p'(x)/p(x) at x = e^u."""

    def __init__(self, poly: DensePoly):
        c = poly.as_float_coeffs()
        self.degree = poly.degree
        self.lowest_coeff = float(c[poly.lowest_degree()])
        self.lead = float(c[-1])
        self.c = c
        self.dc = P.polyder(c) if len(c) > 1 else np.zeros(1)
        self.rc = c[::-1]
        self.rdc = P.polyder(self.rc) if len(c) > 1 else np.zeros(1)

    def evaluate(self, u: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        # x <= 1 directly; x > 1 through the reversed polynomial in t = 1/x
        small = u <= 0
        xs = np.exp(np.minimum(u, 0.0))
        p = P.polyval(xs, self.c)
        ratio_small = xs * P.polyval(xs, self.dc) / p
        log_small = np.log2(p)

        ul = np.maximum(u, 0.0)
        t = np.exp(-ul)
        q = P.polyval(t, self.rc)
        ratio_large = self.degree - t * P.polyval(t, self.rdc) / q
        log_large = self.degree * ul / math.log(2) + np.log2(q)
        return np.where(small, log_small, log_large), np.where(small, ratio_small, ratio_large)


class _SaddleSystem:
    """alpha_k and beta_k in float form plus the limits of x f'/f at 0 and infinity."""

    _cache = {}

    def __init__(self, k: int):
        self.k = k
        self.alpha = _EnumeratorFloats(alpha_poly(k))
        self.beta = _EnumeratorFloats(beta_poly(k))

    @classmethod
    def get(cls, k: int) -> "_SaddleSystem":
        if k not in cls._cache:
            cls._cache[k] = cls(k)
        return cls._cache[k]

    def ratio_limits(self, eta: ArrayLike) -> Tuple[ArrayLike, ArrayLike]:
        lower = eta
        upper = (1 - eta) * self.alpha.degree + eta * self.beta.degree
        return lower, upper

    def log_terms(self, u: np.ndarray, eta: ArrayLike) -> Tuple[np.ndarray, np.ndarray]:
        """(1-eta) log2 alpha + eta log2 beta, and x f'/f, at x = e^u."""
        la, ra = self.alpha.evaluate(u)
        lb, rb = self.beta.evaluate(u)
        return (1 - eta) * la + eta * lb, (1 - eta) * ra + eta * rb

    def lower_boundary(self, eta: ArrayLike) -> ArrayLike:
        return (1 - eta) * np.log2(self.alpha.lowest_coeff) + eta * np.log2(self.beta.lowest_coeff)

    def upper_boundary(self, eta: ArrayLike) -> ArrayLike:
        return (1 - eta) * np.log2(self.alpha.lead) + eta * np.log2(self.beta.lead)


def _check_unit(name: str, value: ArrayLike) -> None:
    arr = np.asarray(value, dtype=float)
    if np.any((arr < 0) | (arr > 1)) or np.any(np.isnan(arr)):
        raise ParameterError(f"{name} must lie in [0, 1], got {value}")


def _check_rate(j: int, k: int) -> None:
    if j < 1 or k < 1:
        raise ParameterError(f"degrees must be positive, got j={j}, k={k}")
    if not 0 < 1 - j / k < 1:
        raise ParameterError(f"design rate 1 - j/k must lie in (0, 1), got j={j}, k={k}")


# ---------- saddle point ----------
def saddle_root(k: int, eta: float, ell: float) -> float:
    """
    Smallest positive root r of x f'(x) / f(x) = l k, f = alpha_k^(1-eta) beta_k^eta.

    The bracket is verified, the ratio is checked to be nondecreasing on 65
    sampled points, and the returned root satisfies |x f'/f - lk| <= 1e-12 lk.

    Raises:
        SaddlePointError: lk is outside the open range of x f'/f (syndrome
            weight bound or degree bound regime), or a check fails.
    """
    if not 0 < ell < 1:
        raise ParameterError(f"saddle_root needs 0 < l < 1, got {ell}")
    _check_unit("eta", eta)
    system = _SaddleSystem.get(k)
    target = ell * k
    lower, upper = system.ratio_limits(eta)

    if upper - lower <= BOUNDARY_TOL:
        # f is a monomial: x f'/f is constant
        if abs(target - lower) <= BOUNDARY_TOL * max(1.0, target):
            return 1.0
        raise SaddlePointError(f"x f'/f is constant {lower} for k={k}, eta={eta}; no root at lk={target}")
    if target <= lower:
        raise SaddlePointError(f"lk={target} <= eta={eta}: syndrome weight bound regime, no saddle point")
    if target >= upper:
        raise SaddlePointError(f"lk={target} >= {upper}: above the degree bound, no saddle point")

    def excess(u: float) -> float:
        return float(system.log_terms(np.array([u]), eta)[1][0] - target)

    a, b = -U_BRACKET, U_BRACKET
    if not excess(a) < 0 < excess(b):
        raise SaddlePointError(f"bracket [{a}, {b}] in ln x does not straddle lk={target}")

    samples = system.log_terms(np.linspace(a, b, 65), eta)[1]
    if np.any(np.diff(samples) < -1e-12):
        raise SaddlePointError(f"x f'/f is not monotone on the bracket for k={k}, eta={eta}")

    u = optimize.bisect(excess, a, b, xtol=1e-14, maxiter=500)
    residual = abs(excess(u))
    if residual > 1e-12 * target:
        raise SaddlePointError(f"saddle point residual {residual:.3e} exceeds 1e-12 * lk")
    return float(math.exp(u))


def bipartite_agr(j: int, k: int, ell: float, eta: float) -> AgrValue:
    """
    AGR of the (j,k)-regular bipartite ensemble.

    Returns NEG_INFINITY when l < eta/k (syndrome weight bound) or when lk
    exceeds the degree of f; the end points take their limiting values.
    """
    _check_rate(j, k)
    _check_unit("l", ell)
    _check_unit("eta", eta)
    system = _SaddleSystem.get(k)
    target = ell * k
    lower, upper = system.ratio_limits(eta)
    entropy = (j - 1) * binary_entropy(ell)

    if abs(target - lower) <= BOUNDARY_TOL:
        return float((j / k) * system.lower_boundary(eta) - entropy)
    if abs(target - upper) <= BOUNDARY_TOL:
        return float((j / k) * system.upper_boundary(eta) - entropy)
    if target < lower or target > upper:
        return NEG_INFINITY

    r = saddle_root(k, eta, ell)
    log_f, _ = system.log_terms(np.array([math.log(r)]), eta)
    return float((j / k) * (log_f[0] - target * math.log2(r)) - entropy)


class BipartiteGrowth:
    """
    Vectorized b_l(eta) of a (j,k)-regular bipartite component, optionally
    scaled by its column share (a component of nu*n columns contributes
    nu * b to the growth of the whole concatenation).
    """

    vectorized = True

    def __init__(self, j: int, k: int, scale: float = 1.0):
        _check_rate(j, k)
        if scale <= 0:
            raise ParameterError(f"scale must be positive, got {scale}")
        self.j = j
        self.k = k
        self.scale = scale
        self._system = _SaddleSystem.get(k)

    @property
    def design_rate(self) -> float:
        return 1.0 - self.j / self.k

    def __call__(self, ell: ArrayLike, eta: ArrayLike) -> ArrayLike:
        ell_a, eta_a = np.broadcast_arrays(np.asarray(ell, dtype=float), np.asarray(eta, dtype=float))
        _check_unit("l", ell_a)
        _check_unit("eta", eta_a)
        j, k, system = self.j, self.k, self._system

        target = ell_a * k
        lower, upper = system.ratio_limits(eta_a)
        entropy = np.asarray((j - 1) * binary_entropy(ell_a), dtype=float)
        out = np.full(target.shape, NEG_INFINITY)

        at_lower = np.abs(target - lower) <= BOUNDARY_TOL
        at_upper = (np.abs(target - upper) <= BOUNDARY_TOL) & ~at_lower
        inside = (target > lower + BOUNDARY_TOL) & (target < upper - BOUNDARY_TOL)

        out = np.where(at_lower, (j / k) * system.lower_boundary(eta_a) - entropy, out)
        out = np.where(at_upper, (j / k) * system.upper_boundary(eta_a) - entropy, out)

        if np.any(inside):
            t = target[inside]
            e = eta_a[inside]
            lo = np.full(t.shape, -U_BRACKET)
            hi = np.full(t.shape, U_BRACKET)
            for _ in range(BISECTION_STEPS):
                mid = 0.5 * (lo + hi)
                below = system.log_terms(mid, e)[1] < t
                lo = np.where(below, mid, lo)
                hi = np.where(below, hi, mid)
            u = 0.5 * (lo + hi)
            log_f, _ = system.log_terms(u, e)
            out[inside] = (j / k) * (log_f - t * u / math.log(2)) - entropy[inside]

        out = np.where(np.isfinite(out), out * self.scale, out)
        return float(out) if out.ndim == 0 else out

    def at_eta(self, eta: float) -> Callable[[ArrayLike], ArrayLike]:
        """l -> b_l(eta) at a fixed normalized syndrome weight."""
        _check_unit("eta", eta)

        def curve(ell: ArrayLike) -> ArrayLike:
            return self(ell, eta)

        curve.vectorized = True
        return curve


def _vectorize(f: Callable) -> Callable:
    if getattr(f, "vectorized", False):
        return f
    return np.vectorize(f, otypes=[float])


# ---------- finite length ----------
@dataclass(frozen=True)
class FiniteGrowth:
    """(1/n) log2 B~_w(sigma) at the realized point (l, eta) = (w/n, sigma/m)."""

    value: AgrValue
    w: int
    sigma: int
    ell: float
    eta: float

    def __float__(self) -> float:
        return self.value


def _exact_log2(value: Fraction) -> float:
    if value <= 0:
        return NEG_INFINITY
    return math.log2(value.numerator) - math.log2(value.denominator)


def _nearest_with_parity(target: float, parity: Optional[int], top: int) -> int:
    candidates = [v for v in range(top + 1) if parity is None or v % 2 == parity]
    return min(candidates, key=lambda v: (abs(v - target), v))


def agr_finite_n_check(
    j: int, k: int, n: int, ell: float, eta: float, budgets: Optional[Budgets] = None
) -> FiniteGrowth:
    """
    Exact finite length growth (1/n) log2 B~_w(sigma) of the bipartite table.

    sigma is the nearest admissible value to eta*m and w the nearest value to
    l*n with w*j = sigma (mod 2); every other cell is structurally zero.
    """
    params = Bipartite(j, k, n, j * n // k) if (j * n) % k == 0 else None
    if params is None:
        raise ParameterError(f"bipartite needs k | jn, got j={j}, k={k}, n={n}")
    _check_unit("l", ell)
    _check_unit("eta", eta)
    budgets = budgets or Budgets.from_env()
    if j * n > budgets.max_exact_degree:
        raise BudgetError(f"jn={j * n} exceeds max_exact_degree={budgets.max_exact_degree}")

    m = params.m
    sigma = _nearest_with_parity(eta * m, 0 if j % 2 == 0 else None, m)
    w = _nearest_with_parity(ell * n, None if j % 2 == 0 else sigma % 2, n)
    value = bipartite_acwd(j, k, n, m, sigma, w)
    logger.debug(f"Finite growth ({j},{k}) n={n}: w={w}, sigma={sigma}, B~={value}")
    return FiniteGrowth(_exact_log2(value) / n, w, sigma, w / n, sigma / m)


# ---------- concatenation ----------
@dataclass(frozen=True)
class ConcatAgr:
    value: AgrValue
    ell1: float
    ell2: float
    kappa1: float
    kappa2: float

    @property
    def argmax(self) -> Tuple[float, float, float, float]:
        return self.ell1, self.ell2, self.kappa1, self.kappa2


def concat_objective(
    x_agr: Callable, y_agr: Callable, rate: float, ell: float, eta: float
) -> Callable[[float, float, float, float], float]:
    """
    g(l1, l2, k1, k2) = (1-R)(eta H(k1/eta) + (1-eta) H(k2/(1-eta)))
                        + bX_{l1}(k1 + k2) + bY_{l2}(eta - k1 + k2)
    """
    x_agr, y_agr = _vectorize(x_agr), _vectorize(y_agr)

    def g(ell1: float, ell2: float, kappa1: float, kappa2: float) -> float:
        h1 = eta * binary_entropy(min(1.0, kappa1 / eta)) if eta > 0 else 0.0
        h2 = (1 - eta) * binary_entropy(min(1.0, kappa2 / (1 - eta))) if eta < 1 else 0.0
        return float(
            (1 - rate) * (h1 + h2)
            + x_agr(ell1, min(1.0, kappa1 + kappa2))
            + y_agr(ell2, min(1.0, max(0.0, eta - kappa1 + kappa2)))
        )

    return g


def concat_agr(
    x_agr: Callable,
    y_agr: Callable,
    nu1: float,
    nu2: float,
    rate: float,
    ell: float,
    eta: float,
    grid: int = 200,
    rounds: int = 10,
) -> ConcatAgr:
    """
    AGR of the concatenation of two row symmetric ensemble sequences, the max
    of g over {l = nu1 l1 + nu2 l2, 0 <= k1 <= eta, 0 <= k2 <= 1 - eta}.

    x_agr and y_agr already carry their column share (e.g. BipartiteGrowth(j, k,
    scale=nu1)). l2 is eliminated, (l1, k1, k2) is gridded with a common kappa
    step and the best cell is refined by coordinate descent with the step
    halved each round. Points where g is -inf never win.
    """
    if abs(nu1 + nu2 - 1) > 1e-12 or nu1 <= 0 or nu2 <= 0:
        raise ParameterError(f"column shares must be positive and sum to 1, got {nu1}, {nu2}")
    if not 0 < rate < 1:
        raise ParameterError(f"rate must lie in (0, 1), got {rate}")
    _check_unit("l", ell)
    _check_unit("eta", eta)
    if grid < 2:
        raise ParameterError(f"grid needs at least 2 points, got {grid}")
    x_agr, y_agr = _vectorize(x_agr), _vectorize(y_agr)

    l1_lo = max(0.0, (ell - nu2) / nu1)
    l1_hi = min(1.0, ell / nu1)
    if l1_lo > l1_hi + 1e-15:
        return ConcatAgr(NEG_INFINITY, math.nan, math.nan, math.nan, math.nan)

    step = 1.0 / (grid - 1)
    a_max = int(math.floor(eta / step + 1e-9))
    b_max = int(math.floor((1 - eta) / step + 1e-9))
    span = a_max + b_max + 1
    ell1 = np.linspace(l1_lo, l1_hi, grid) if l1_hi > l1_lo else np.array([l1_lo])
    ell2 = np.clip((ell - nu1 * ell1) / nu2, 0.0, 1.0)

    kappa1 = np.arange(a_max + 1) * step
    kappa2 = np.arange(b_max + 1) * step
    h1 = eta * binary_entropy(np.clip(kappa1 / eta, 0, 1)) if eta > 0 else np.zeros(a_max + 1)
    h2 = (1 - eta) * binary_entropy(np.clip(kappa2 / (1 - eta), 0, 1)) if eta < 1 else np.zeros(b_max + 1)
    entropy_terms = (1 - rate) * (h1[:, None] + h2[None, :])

    t = np.arange(span)
    x_args = np.clip(t * step, 0.0, 1.0)
    y_args = np.clip(eta + (t - a_max) * step, 0.0, 1.0)
    bx = x_agr(ell1[:, None], x_args[None, :])
    by = y_agr(ell2[:, None], y_args[None, :])

    a_idx = np.arange(a_max + 1)[:, None]
    b_idx = np.arange(b_max + 1)[None, :]
    best, best_point = NEG_INFINITY, None
    for i in range(len(ell1)):
        g = entropy_terms + bx[i, a_idx + b_idx] + by[i, b_idx - a_idx + a_max]
        flat = int(np.argmax(g))
        if g.flat[flat] > best:
            a, b = divmod(flat, b_max + 1)
            best, best_point = float(g.flat[flat]), [float(ell1[i]), a * step, b * step]

    if best_point is None:
        return ConcatAgr(NEG_INFINITY, math.nan, math.nan, math.nan, math.nan)

    objective = concat_objective(x_agr, y_agr, rate, ell, eta)
    bounds = [(l1_lo, l1_hi), (0.0, eta), (0.0, 1.0 - eta)]

    def evaluate(point) -> float:
        l1, k1, k2 = point
        l2 = min(1.0, max(0.0, (ell - nu1 * l1) / nu2))
        return objective(l1, l2, k1, k2)

    steps = [(l1_hi - l1_lo) / max(grid - 1, 1), step, step]
    for _ in range(rounds):
        for coord in range(3):
            for direction in (-1.0, 1.0):
                trial = list(best_point)
                lo, hi = bounds[coord]
                trial[coord] = min(hi, max(lo, trial[coord] + direction * steps[coord]))
                value = evaluate(trial)
                if value > best:
                    best, best_point = value, trial
        steps = [s * 0.5 for s in steps]

    l1, k1, k2 = best_point
    l2 = min(1.0, max(0.0, (ell - nu1 * l1) / nu2))
    logger.debug(f"concat AGR at l={ell}, eta={eta}: {best:.6f} at l1={l1:.4f}, k1={k1:.4f}, k2={k2:.4f}")
    return ConcatAgr(best, l1, l2, k1, k2)


# ---------- curves and typical coset weight ----------
@dataclass(frozen=True)
class AgrCurve:
    eta: float
    samples: Tuple[Tuple[float, AgrValue], ...]

    def __post_init__(self):
        ells = [s[0] for s in self.samples]
        if any(b <= a for a, b in zip(ells, ells[1:])):
            raise ParameterError("AGR curve grid must be strictly increasing in l")

    @property
    def ells(self) -> Tuple[float, ...]:
        return tuple(s[0] for s in self.samples)

    @property
    def values(self) -> Tuple[AgrValue, ...]:
        return tuple(s[1] for s in self.samples)

    def first_crossing(self, level: float = 0.0) -> Optional[float]:
        """Smallest sampled l whose value is finite and >= level."""
        for ell, value in self.samples:
            if math.isfinite(value) and value >= level:
                return ell
        return None


def agr_curve(agr: Callable, eta: float, ells: Sequence[float]) -> AgrCurve:
    """Sample l -> agr(l, eta) on the given grid."""
    _check_unit("eta", eta)
    grid = np.asarray(list(ells), dtype=float)
    values = np.asarray(_vectorize(agr)(grid, eta), dtype=float)
    return AgrCurve(eta, tuple((float(l), float(v)) for l, v in zip(grid, values)))


def typical_coset_weight(
    agr: Callable[[ArrayLike], ArrayLike], grid: int = 1000, level: float = 0.0, xtol: float = 1e-7
) -> float:
    """
    theta = smallest l in (0, 1] with agr(l) >= level.

    The sign is sampled on a grid starting just above 0, then the first
    crossing is bisected. -inf counts as negative. l = 0 itself is excluded,
    so the zero word of the zero coset never counts as a crossing.

    Raises:
        NoCrossingError: agr stays below level on the whole interval.
    """
    if grid < 2:
        raise ParameterError(f"grid needs at least 2 points, got {grid}")
    f = _vectorize(agr)
    ells = np.concatenate([[1e-9], np.linspace(1.0 / grid, 1.0, grid)])
    values = np.asarray(f(ells), dtype=float) - level
    values = np.where(np.isfinite(values), values, NEG_FLOOR)

    nonneg = np.nonzero(values >= 0)[0]
    if nonneg.size == 0:
        raise NoCrossingError(f"growth rate stays below {level} on (0, 1]")
    first = int(nonneg[0])
    if first == 0:
        logger.warning("growth rate is already nonnegative next to l = 0; no negative region before the crossing")
        return 0.0

    def shifted(x: float) -> float:
        v = float(f(np.array([x]))[0]) - level
        return v if math.isfinite(v) else NEG_FLOOR

    return float(optimize.bisect(shifted, float(ells[first - 1]), float(ells[first]), xtol=xtol))


@dataclass(frozen=True)
class TailCertificate:
    """sup of the growth rate over [0, l'] and whether it certifies a vanishing tail."""

    eta: float
    ell_prime: float
    supremum: AgrValue
    argsup: float
    certified: bool

    @property
    def conclusion(self) -> str:
        if self.certified:
            return f"Pr[coset weight <= {self.ell_prime} n] -> 0"
        return "trivial: no vanishing tail at l' = 0"


def coset_weight_tail_bound(agr: Callable, eta: float, ell_prime: float, grid: int = 400) -> TailCertificate:
    """
    Bound the growth of F~_{l'n} by sup_{0 <= l <= l'} b_l(eta); a negative
    supremum means cosets of weight below l'n are sampled with vanishing
    probability. For eta = 0 the supremum runs over (0, l'].

    Raises:
        CertificateError: l' > 0 and the supremum is not negative.
    """
    _check_unit("eta", eta)
    _check_unit("l'", ell_prime)
    f = _vectorize(agr)

    if ell_prime == 0:
        value = float(f(np.array([0.0]), eta)[0])
        return TailCertificate(eta, 0.0, value, 0.0, value < 0)

    start = ell_prime / grid if eta == 0 else 0.0
    ells = np.linspace(start, ell_prime, grid + 1)
    values = np.asarray(f(ells, eta), dtype=float)
    i = int(np.argmax(values))
    sup, argsup = float(values[i]), float(ells[i])

    if math.isfinite(sup):
        lo, hi = float(ells[max(i - 1, 0)]), float(ells[min(i + 1, len(ells) - 1)])
        if hi > lo:

            def negated(x: float) -> float:
                v = float(f(np.array([x]), eta)[0])
                return -v if math.isfinite(v) else -NEG_FLOOR

            res = optimize.minimize_scalar(negated, bounds=(lo, hi), method="bounded")
            if -res.fun > sup:
                sup, argsup = float(-res.fun), float(res.x)

    if sup >= 0:
        raise CertificateError(
            f"sup of the growth rate on [0, {ell_prime}] is {sup:.6g} >= 0 at l={argsup:.6g}; "
            "l' is not below the typical coset weight"
        )
    return TailCertificate(eta, ell_prime, sup, argsup, True)
