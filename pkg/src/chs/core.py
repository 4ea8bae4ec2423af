"""Complete homogeneous symmetric polynomials, power sums, and majorization.

A weight vector is any 1-D sequence of finite reals a = (a_1, ..., a_n); ops
accept anything ``numpy.asarray`` understands. Polynomials are ascending
coefficient sequences. h_0 = 1 by convention.

Four independent evaluation algorithms back ``h_eval``; the generating-function
recurrence is the default because it is total and O(n*k). The others exist to
cross-check it (and each other) on their own domains.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import (
    BudgetExceeded,
    DistinctnessViolation,
    IndexOutOfRange,
    LengthMismatch,
)

DIRECT_BUDGET = 10**7  # max multiset count for the direct method

H_EVAL_METHODS = ("recurrence", "direct", "power_sum", "lagrange")


@dataclass(frozen=True)
class EvalConfig:
    """Shared numerical knobs.

    rel_tol / abs_tol are the generic comparison tolerances, max_k_partition
    caps the partition expansion, distinctness_tol is the minimum pairwise gap
    interpolation-type formulas accept.
    """

    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_k_partition: int = 30
    distinctness_tol: float = 1e-8

    def __post_init__(self):
        if min(self.rel_tol, self.abs_tol, self.distinctness_tol) <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_k_partition < 1:
            raise ValueError("max_k_partition must be >= 1")


DEFAULT_CONFIG = EvalConfig()


def as_weights(a) -> np.ndarray:
    """Validate and convert a weight vector to a contiguous float array."""
    arr = np.atleast_1d(np.asarray(a, dtype=float))
    if arr.ndim != 1:
        raise ValueError("weight vector must be one-dimensional")
    if arr.size == 0:
        raise ValueError("weight vector must have length >= 1")
    if not np.all(np.isfinite(arr)):
        raise ValueError("weight entries must be finite")
    return np.ascontiguousarray(arr)


# ---------------------------------------------------------------------------
# weight-vector predicates (constraint-set membership within tolerance)

def is_unit_l2(a, tol: float = 1e-9) -> bool:
    a = as_weights(a)
    return abs(float(a @ a) - 1.0) <= tol


def is_zero_sum(a, tol: float = 1e-9) -> bool:
    a = as_weights(a)
    return abs(float(a.sum())) <= tol


def is_nonneg(a, tol: float = 0.0) -> bool:
    a = as_weights(a)
    return bool(np.all(a >= -tol))


def is_unit_linf(a, tol: float = 1e-9) -> bool:
    a = as_weights(a)
    return abs(float(np.max(np.abs(a))) - 1.0) <= tol


# ---------------------------------------------------------------------------
# binomials

def binom_float(n: int, k: int) -> float:
    """C(n, k) as a float.

    Exact integer arithmetic (math.comb) whenever the result fits a double;
    the log-gamma route only decides overflow, since a value beyond 1e308
    cannot be returned anyway.
    """
    if k < 0 or k > n:
        return 0.0
    # log-gamma screen: is the result representable at all?
    lg = math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)
    if lg > 709.0:  # ln(1.8e308)
        raise OverflowError("binomial coefficient exceeds double range")
    return float(math.comb(n, k))


def _check_k(k, name: str = "k", minimum: int = 0) -> int:
    if not isinstance(k, (int, np.integer)) or isinstance(k, bool):
        raise ValueError(f"{name} must be an integer")
    k = int(k)
    if k < minimum:
        raise ValueError(f"{name} must be >= {minimum}")
    return k


# ---------------------------------------------------------------------------
# h_k evaluation

def _h_direct(a: np.ndarray, k: int) -> float:
    n = a.size
    count = math.comb(n + k - 1, k)
    if count > DIRECT_BUDGET:
        raise BudgetExceeded(
            f"direct method would enumerate {count} monomials (budget {DIRECT_BUDGET})"
        )
    total = 0.0
    for idx in itertools.combinations_with_replacement(range(n), k):
        term = 1.0
        for i in idx:
            term *= a[i]
        total += term
    return total


def _partition_multiplicities(k: int):
    """Yield partitions of k as (part, multiplicity) lists."""

    def gen(remaining, max_part):
        if remaining == 0:
            yield []
            return
        top = min(remaining, max_part)
        for part in range(top, 0, -1):
            for mult in range(remaining // part, 0, -1):
                for rest in gen(remaining - part * mult, part - 1):
                    yield [(part, mult)] + rest

    yield from gen(k, k)


def _h_power_sum(a: np.ndarray, k: int, config: EvalConfig) -> float:
    if k > config.max_k_partition:
        raise BudgetExceeded(
            f"power-sum expansion capped at k <= {config.max_k_partition}, got {k}"
        )
    p = [0.0] + [float(np.sum(a**i)) for i in range(1, k + 1)]
    total = 0.0
    for parts in _partition_multiplicities(k):
        term = 1.0
        for part, mult in parts:
            term *= p[part] ** mult / (math.factorial(mult) * part**mult)
        total += term
    return total


def check_distinct(a: np.ndarray, tol: float) -> None:
    """Raise DistinctnessViolation when any pairwise gap is below tol."""
    if a.size < 2:
        return
    s = np.sort(a)
    gap = np.min(np.diff(s))
    if gap < tol:
        raise DistinctnessViolation(
            f"minimum pairwise gap {gap:.3e} below distinctness tolerance {tol:.1e}"
        )


def _h_lagrange(a: np.ndarray, k: int, config: EvalConfig) -> float:
    check_distinct(a, config.distinctness_tol)
    n = a.size
    total = 0.0
    for i in range(n):
        denom = 1.0
        for j in range(n):
            if j != i:
                denom *= a[i] - a[j]
        total += a[i] ** (n + k - 1) / denom
    return total


def h_eval(a, k, method: str = "recurrence", config: EvalConfig = DEFAULT_CONFIG) -> float:
    """h_k(a), the complete homogeneous symmetric polynomial of degree k.

    Methods: ``recurrence`` (default, total, O(n*k) generating-function table),
    ``direct`` (multiset enumeration, budget-capped), ``power_sum`` (partition
    expansion over power sums, k <= config.max_k_partition), ``lagrange``
    (interpolation formula, pairwise-distinct coordinates only).
    """
    arr = as_weights(a)
    k = _check_k(k)
    if method == "recurrence":
        return float(_backend.h_all(arr, k)[k])
    if method == "direct":
        return _h_direct(arr, k)
    if method == "power_sum":
        return _h_power_sum(arr, k, config)
    if method == "lagrange":
        return _h_lagrange(arr, k, config)
    raise ValueError(f"unknown method {method!r}; expected one of {H_EVAL_METHODS}")


def h_all(a, kmax) -> np.ndarray:
    """The full table (h_0(a), ..., h_kmax(a)) by the recurrence."""
    return _backend.h_all(as_weights(a), _check_k(kmax, "kmax"))


def h_grad(a, k, config: EvalConfig = DEFAULT_CONFIG) -> np.ndarray:
    """Gradient of h_k: component i is h_{k-1}(a, a_i) (a with a_i appended)."""
    arr = as_weights(a)
    k = _check_k(k, minimum=1)
    _, grad = _backend.h_grad_batch(arr[None, :], k)
    return grad[0]


def power_sum(a, m) -> float:
    """p_m(a) = sum a_i^m."""
    arr = as_weights(a)
    m = _check_k(m, "m", minimum=1)
    return float(np.sum(arr**m))


def h_repeated(t: float, copies: int, m: int) -> float:
    """H_m^{(copies)}(t) = sum_{j<=m} C(copies+j-1, j) t^j = h_m(t,...,t, 1).

    (copies repeats of t plus a single 1.)
    """
    copies = _check_k(copies, "copies", minimum=1)
    m = _check_k(m, "m")
    t = float(t)
    total = 0.0
    power = 1.0
    for j in range(m + 1):
        total += binom_float(copies + j - 1, j) * power
        power *= t
    return total


def rearrange_desc(x) -> np.ndarray:
    """Decreasing rearrangement of x."""
    arr = as_weights(x)
    return np.sort(arr)[::-1].copy()


def majorizes(x, y, tol: float = 1e-9) -> bool:
    """True iff x is majorized by y (x ≺ y): equal totals and dominated
    sorted prefix sums, both within absolute tolerance ``tol``."""
    xs = as_weights(x)
    ys = as_weights(y)
    if xs.size != ys.size:
        raise LengthMismatch(f"lengths differ: {xs.size} vs {ys.size}")
    px = np.cumsum(rearrange_desc(xs))
    py = np.cumsum(rearrange_desc(ys))
    if abs(px[-1] - py[-1]) > tol:
        return False
    return bool(np.all(px <= py + tol))


def schur_ostrowski_value(a, k, i, j, config: EvalConfig = DEFAULT_CONFIG) -> float:
    """(a_i - a_j) (d_i - d_j) h_{2k}(a); >= 0 for every real a."""
    arr = as_weights(a)
    k = _check_k(k, minimum=1)
    n = arr.size
    for idx in (i, j):
        if not 0 <= idx < n:
            raise IndexOutOfRange(f"index {idx} outside 0..{n - 1}")
    if i == j:
        raise ValueError("indices must differ")
    grad = h_grad(arr, 2 * k, config)
    return float((arr[i] - arr[j]) * (grad[i] - grad[j]))


def hunter_1977_bound(a, k) -> float:
    """The classical lower bound (1/(k! 2^k)) (sum a_i^2)^k for h_{2k}(a)."""
    arr = as_weights(a)
    k = _check_k(k, minimum=1)
    return float((arr @ arr) ** k / (math.factorial(k) * 2**k))


# ---------------------------------------------------------------------------
# polynomial palindromicity

def poly_trim(p, tol: float = 1e-12) -> np.ndarray:
    """Ascending coefficients with trailing (near-)zeros removed."""
    arr = np.atleast_1d(np.asarray(p, dtype=float))
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("polynomial must be a non-empty 1-D coefficient sequence")
    keep = np.nonzero(np.abs(arr) > tol)[0]
    if keep.size == 0:
        return np.zeros(1)
    return arr[: keep[-1] + 1].copy()


def palindrome_class(p, config: EvalConfig = DEFAULT_CONFIG) -> str:
    """Classify coefficients as palindromic / anti_palindromic / neither.

    Anti-palindromic polynomials always vanish at x = 1.
    """
    c = poly_trim(p, config.abs_tol)
    rev = c[::-1]
    if np.all(np.abs(c - rev) <= config.abs_tol):
        return "palindromic"
    if np.all(np.abs(c + rev) <= config.abs_tol):
        return "anti_palindromic"
    return "neither"
