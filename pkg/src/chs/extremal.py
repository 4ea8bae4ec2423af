"""Sharp extremal constants and extremizer vectors.

Four constraint regimes are covered: the unit sphere with a zero-sum
side-constraint or not, nonnegative unit vectors, and the unit cube in
the sup norm.  Each operation returns the closed-form optimum together
with the vector attaining it; implicit extremizers are resolved by
bisection on brackets whose sign change is guaranteed analytically.
"""

import math

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import Polynomial

from . import core, moments
from .errors import (
    BracketFailure,
    OddDimension,
    RootIsolationFailure,
    UnsupportedExponent,
)

STRUCTURE_HALF = "half_plus_minus"
STRUCTURE_EQUAL_SUPPORT = "equal_support_m"
STRUCTURE_S_THEN_T = "s_then_t_repeated"
STRUCTURE_T_THEN_ONE = "t_repeated_then_one"
STRUCTURE_FLAT = "flat"
STRUCTURE_TWO_BLOCK = "two_block"
STRUCTURE_ONE_AGAINST_REST = "one_against_rest"
STRUCTURE_PLUS_MINUS_ZERO = "plus_minus_zero"


@dataclass(frozen=True, eq=False)
class ExtremalResult:
    """Optimum value, attaining vector, and how the vector is shaped."""

    value: float
    argvec: np.ndarray
    structure: str
    certificate: dict | None = None


def _check_int(x, name, minimum):
    if not isinstance(x, (int, np.integer)) or isinstance(x, bool):
        raise ValueError(f"{name} must be an integer")
    if x < minimum:
        raise ValueError(f"{name} must be >= {minimum}")
    return int(x)


def bisect_root(f, lo, hi, tol=1e-12, max_iter=400):
    """Plain bisection for a sign-changing f on [lo, hi]."""
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0:
        raise BracketFailure(f"no sign change on [{lo}, {hi}]")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0 or hi - lo < tol:
            return mid
        if flo * fm < 0:
            hi = mid
        else:
            lo, flo = mid, fm
    return 0.5 * (lo + hi)


def _half_vector(n):
    m = n // 2
    v = np.full(n, 1.0 / math.sqrt(n))
    v[m:] *= -1.0
    return v


def hunter_min(n, k):
    """Minimum of h_2k over the unit sphere for even n.

    Attained at the half-plus/half-minus vector; the value has the closed
    form (n/2+k-1)! / (k! (n/2-1)! n^k).
    """
    n = _check_int(n, "n", 2)
    k = _check_int(k, "k", 1)
    if n % 2 != 0:
        raise OddDimension("the half-plus/half-minus vector needs even n")
    m = n // 2
    value = math.exp(
        math.lgamma(m + k) - math.lgamma(k + 1) - math.lgamma(m) - k * math.log(n)
    )
    return ExtremalResult(value, _half_vector(n), STRUCTURE_HALF)


def rho1(n):
    """Sharp constant in the odd-n two-block quadratic bound for h_4.

    Behaves like 2/n for large n and sits in [2/n, 2/(n-1)].
    """
    n = _check_int(n, "n", 3)
    if n % 2 == 0:
        raise ValueError("rho1 is defined for odd n")
    disc = 8.0 - 8.0 * n + n * n + 2.0 * n**3 + float(n) ** 4
    return (-4.0 + 7.0 * n + 4.0 * n * n + n**3 - (n + 3) * math.sqrt(disc)) / (
        2.0 * n * n - 2.0
    )


def _h4_odd_min(n):
    # minimize h_4 along the two-block family ((n-1)/2 copies of a = x*b,
    # (n+1)/2 copies of b) on the unit sphere; along it h_4 equals
    # P(x) / (g1 x^2 + g2)^2 with P(x) = h_4(x repeated g1, 1 repeated g2)
    g1, g2 = (n - 1) // 2, (n + 1) // 2
    p = Polynomial(
        [
            core.binom_float(g1 + j - 1, j) * core.binom_float(g2 + 3 - j, 4 - j)
            for j in range(5)
        ]
    )
    den = Polynomial([float(g2), 0.0, float(g1)])

    def phi(x):
        return p(x) / den(x) ** 2

    # derivative numerator P'(x) den(x) - 4 g1 x P(x); x = 1 (the flat
    # vector, a maximum) is always among its roots
    g = p.deriv() * den - 4.0 * g1 * Polynomial([0.0, 1.0]) * p
    real_roots = [float(r.real) for r in g.roots() if abs(r.imag) < 1e-9]
    if not real_roots:
        raise RootIsolationFailure("no real critical ratio for the h4 minimum")
    x = min(real_roots, key=phi)
    b = 1.0 / math.sqrt(g1 * x * x + g2)
    a = x * b
    argvec = np.concatenate([np.full(g1, a), np.full(g2, b)])
    cert = {"x": x, "a": a, "b": b, "lower_bound": (1.0 + rho1(n)) / 8.0}
    return ExtremalResult(phi(x), argvec, STRUCTURE_TWO_BLOCK, cert)


def h4_unconditional(n):
    """(min, max) of h_4 over the unit sphere."""
    n = _check_int(n, "n", 2)
    flat = np.full(n, 1.0 / math.sqrt(n))
    vmax = ExtremalResult(core.h_eval(flat, 4), flat, STRUCTURE_FLAT)
    if n % 2 == 0:
        return hunter_min(n, 2), vmax
    return _h4_odd_min(n), vmax


def nonneg_min(n, k):
    """Minimum of E(sum a_i X_i)^k over nonnegative unit vectors.

    Attained on an equal-weight support of some size m <= n; ties go to
    the smaller support.
    """
    n = _check_int(n, "n", 1)
    k = _check_int(k, "k", 0)
    best_m, best = 1, moments.rho(1, k)
    for m in range(2, n + 1):
        v = moments.rho(m, k)
        if v < best - 1e-15 * abs(best):
            best_m, best = m, v
    argvec = np.zeros(n)
    argvec[:best_m] = 1.0 / math.sqrt(best_m)
    return ExtremalResult(
        best, argvec, STRUCTURE_EQUAL_SUPPORT, {"support": best_m}
    )


def nk_continuous(k):
    """Continuous support size minimizing rho(., k), for k >= 3.

    Root of sum_{j<k} 1/(n+j) = k/(2n); the left side minus the right is
    negative near 0 and positive at n = k, so bisection applies.
    """
    k = _check_int(k, "k", 3)

    def f(n):
        return sum(1.0 / (n + j) for j in range(k)) - 0.5 * k / n

    return bisect_root(f, 1e-3, float(k), tol=1e-10)


def u0_ratio():
    """Positive root of log(1+u) = u/2; the large-k slope of nk_continuous."""
    return bisect_root(lambda u: math.log1p(u) - 0.5 * u, 1.0, 10.0, tol=1e-12)


def gamma_pair_moment_poly(gamma1, gamma2, k):
    """Polynomial x -> E(x*G1 + G2)^k with G1 ~ Gamma(gamma1), G2 ~ Gamma(gamma2).

    Coefficient j is binom(k,j) * (gamma1)_j * (gamma2)_{k-j} (rising
    factorials), an exact integer for integer shapes.
    """
    gamma1 = _check_int(gamma1, "gamma1", 1)
    gamma2 = _check_int(gamma2, "gamma2", 1)
    k = _check_int(k, "k", 0)
    coeffs = []
    for j in range(k + 1):
        c = (
            math.comb(k, j)
            * math.prod(range(gamma1, gamma1 + j))
            * math.prod(range(gamma2, gamma2 + k - j))
        )
        float(c)  # raises OverflowError once a coefficient leaves float range
        coeffs.append(c)
    return coeffs


def nonneg_max(n, k):
    """Maximum of E(sum a_i X_i)^k over nonnegative unit vectors.

    Over the one-parameter family (s, t, ..., t) with x = t/s in (0, 1],
    the objective is exp(f(x)) with f(x) = log P(x) - (k/2) log((n-1)x^2+1)
    and P = gamma_pair_moment_poly(n-1, 1, k).  Candidates are x = 1 plus
    the real roots of the derivative numerator inside (0, 1).
    """
    n = _check_int(n, "n", 2)
    k = _check_int(k, "k", 1)
    poly = Polynomial([float(c) for c in gamma_pair_moment_poly(n - 1, 1, k)])
    dpoly = poly.deriv()

    def f(x):
        return math.log(poly(x)) - 0.5 * k * math.log((n - 1) * x * x + 1.0)

    candidates = [1.0]
    # derivative numerator: P'(x)((n-1)x^2 + 1) - k(n-1)x P(x); the degree-
    # (k+1) terms cancel so the eigenvalue root solve stays small
    g = dpoly * Polynomial([1.0, 0.0, float(n - 1)]) - float(k) * float(
        n - 1
    ) * Polynomial([0.0, 1.0]) * poly
    try:
        for r in g.roots():
            if abs(r.imag) < 1e-9 and 1e-12 < r.real < 1.0 - 1e-12:
                candidates.append(float(r.real))
    except (np.linalg.LinAlgError, OverflowError):
        grid = np.linspace(1e-4, 1.0, 10**4)
        vals = [f(x) for x in grid]
        i = int(np.argmax(vals))
        lo = grid[max(i - 1, 0)]
        hi = grid[min(i + 1, grid.size - 1)]
        for _ in range(60):  # ternary refinement of the bracket
            m1 = lo + (hi - lo) / 3.0
            m2 = hi - (hi - lo) / 3.0
            if f(m1) < f(m2):
                lo = m1
            else:
                hi = m2
        candidates.append(0.5 * (lo + hi))
    if not candidates:
        raise RootIsolationFailure("no maximizer candidate found in (0, 1]")
    x = max(candidates, key=f)
    if abs(f(x) - f(1.0)) < 1e-10:
        x = 1.0
    s = 1.0 / math.sqrt((n - 1) * x * x + 1.0)
    t = x * s
    argvec = np.concatenate([[s], np.full(n - 1, t)])
    value = math.exp(f(x))
    structure = STRUCTURE_FLAT if x == 1.0 else STRUCTURE_S_THEN_T
    return ExtremalResult(value, argvec, structure, {"x": x})


def centred_min(n, k):
    """Minimum of h_2k over zero-sum unit vectors, even n.

    The zero-sum constraint is inactive at the half-plus/half-minus
    vector, so this coincides with the unconstrained sphere minimum.
    """
    return hunter_min(n, k)


def _centred_max_vector(n):
    small = -1.0 / math.sqrt(n * (n - 1.0))
    big = math.sqrt((n - 1.0) / n)
    return np.concatenate([np.full(n - 1, small), [big]])


def centred_max(n, k):
    """Maximum of h_2k over zero-sum unit vectors."""
    n = _check_int(n, "n", 2)
    k = _check_int(k, "k", 1)
    argvec = _centred_max_vector(n)
    return ExtremalResult(
        core.h_eval(argvec, 2 * k), argvec, STRUCTURE_ONE_AGAINST_REST
    )


def centred_p_max(n, m):
    """Power sum p_m at the zero-sum maximizer, in closed form."""
    n = _check_int(n, "n", 2)
    m = _check_int(m, "m", 1)
    return ((n - 1.0) / n) ** (m / 2.0) + (-1.0) ** m * (n - 1.0) * (
        n * (n - 1.0)
    ) ** (-m / 2.0)


def centred_h4_min(n):
    """Minimum of h_4 over zero-sum unit vectors."""
    n = _check_int(n, "n", 2)
    if n % 2 == 0:
        return hunter_min(n, 2)
    big = math.sqrt((n + 1.0) / (n * (n - 1.0)))
    small = -math.sqrt((n - 1.0) / (n * (n + 1.0)))
    argvec = np.concatenate(
        [np.full((n - 1) // 2, big), np.full((n + 1) // 2, small)]
    )
    cert = {"fourth_power_sum": (n * n + 3.0) / (n * (n * n - 1.0))}
    return ExtremalResult(core.h_eval(argvec, 4), argvec, STRUCTURE_TWO_BLOCK, cert)


X1_VECTOR = np.array([1.0, 1.0, -2.0]) / math.sqrt(6.0)
X2_VECTOR = np.array([1.0, -1.0, 0.0]) / math.sqrt(2.0)


def _x1_value(q):
    if q == 0.0:
        return 1.0
    if q == 2.0:
        return 1.0
    if q == 4.0:
        return 6.0
    s = 1.0 / math.sqrt(6.0)
    return moments.two_group_abs_moment(s, 2.0 * s, 2, 1, q)


def _x2_value(q):
    return math.gamma(1.0 + q) / 2.0 ** (q / 2.0)


def centred_n3_bounds(q):
    """(min, max) of E|a1 X1 + a2 X2 + a3 X3|^q over zero-sum unit vectors.

    The two competing vectors are x1 = (1,1,-2)/sqrt(6) and
    x2 = (1,-1,0)/sqrt(2); which one wins flips between exponent windows,
    and at q in {0, 2, 4} the objective is constant.
    """
    q = float(q)
    if not q > -1.0:
        raise UnsupportedExponent("requires q > -1")
    is_integer = abs(q - round(q)) < 1e-12
    r1 = lambda v, c=None: ExtremalResult(v, X1_VECTOR.copy(),
                                          STRUCTURE_ONE_AGAINST_REST, c)
    r2 = lambda v, c=None: ExtremalResult(v, X2_VECTOR.copy(),
                                          STRUCTURE_PLUS_MINUS_ZERO, c)
    if is_integer and round(q) in (0, 2, 4):
        v = {0: 1.0, 2: 1.0, 4: 6.0}[round(q)]
        return r1(v, {"constant": True}), r2(v, {"constant": True})
    if -1.0 < q < 0.0 or 2.0 < q < 4.0:
        return r1(_x1_value(q)), r2(_x2_value(q))
    if 0.0 < q < 2.0 or 4.0 < q < 6.0 or (is_integer and q > 4.0):
        return r2(_x2_value(q)), r1(_x1_value(q))
    raise UnsupportedExponent("no closed case split for non-integer q >= 6")


def linf_min(n, k):
    """Minimum of h_2k over the unit sup-norm cube.

    Attained at (t, ..., t, 1) with t in (-1, 0) the unique root of
    h_{2k-1}(t repeated n times, 1); the value is binom(n+2k-1, 2k) t^2k.
    """
    n = _check_int(n, "n", 2)
    k = _check_int(k, "k", 1)
    t = bisect_root(
        lambda t: core.h_repeated(t, n, 2 * k - 1),
        -1.0 + 1e-12,
        -1e-12,
        tol=1e-13,
    )
    value = core.binom_float(n + 2 * k - 1, 2 * k) * t ** (2 * k)
    argvec = np.concatenate([np.full(n - 1, t), [1.0]])
    return ExtremalResult(value, argvec, STRUCTURE_T_THEN_ONE, {"t": t})
