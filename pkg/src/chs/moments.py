"""Moments of weighted sums of i.i.d. standard exponential variables.

Everything here evaluates quantities attached to Y = sum_i a_i X_i where
the X_i are independent standard exponentials: signed integer moments,
absolute moments E|Y|^q by four independent routes, the closed-form
density, and the real part of the characteristic function.
"""

import math

from dataclasses import dataclass

import numpy as np
from scipy import integrate

from . import core
from ._backend import elem_all, h_all
from .errors import (
    DistinctnessViolation,
    NonConvergedQuadrature,
    PoleHit,
    UnsupportedExponent,
    ZeroCoefficient,
)

ABS_MOMENT_METHODS = ("interpolation", "density_quadrature", "fourier", "monte_carlo")

# Fourier route validity windows for the exponent.
FOURIER_WINDOWS = ((0.0, 2.0), (2.0, 4.0), (4.0, 6.0))

# Number of series terms kept on [0, t0] inside the fourier route.  With
# t0 * max|a| = 1/2 the j-th term is below binom(n+2j-1, 2j) * 4^-j, which
# at j = 64 is under 1e-27 for every n <= 64.
_FOURIER_TERMS = 64

_MC_CHUNK = 1 << 17


@dataclass(frozen=True)
class McSettings:
    """Sampling plan for the monte_carlo moment route."""

    samples: int = 10**6
    seed: int = 0

    def __post_init__(self):
        if not isinstance(self.samples, int) or self.samples < 10**3:
            raise ValueError("samples must be an integer >= 1000")
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in an unsigned 64-bit integer")


def integer_moment(a, k):
    """Signed moment E(sum a_i X_i)^k = k! * h_k(a) for integer k >= 0."""
    a = core.as_weights(a)
    core._check_k(k)
    h = core.h_eval(a, k)
    if k <= 170:
        return float(math.factorial(k)) * h
    if h == 0.0:
        return 0.0
    return math.copysign(math.exp(math.lgamma(k + 1) + math.log(abs(h))), h)


def rho(n, q):
    """Gamma(n+q) / (Gamma(n) n^(q/2)).

    For integer n this is the q-th moment of (X_1 + ... + X_n)/sqrt(n).
    The expression extends to any real n > 0 and q > -n.
    """
    n = float(n)
    q = float(q)
    if not n > 0:
        raise ValueError("n must be positive")
    s = n + q
    if s <= 0:
        if abs(s - round(s)) < 1e-12:
            raise PoleHit(f"gamma pole at n + q = {round(s)}")
        raise ValueError("rho requires q > -n")
    if s < 170.0 and n < 170.0:
        # direct ratio keeps small integer cases exact (rho(1, k) = k!)
        return math.gamma(s) / (math.gamma(n) * n ** (0.5 * q))
    return math.exp(math.lgamma(s) - math.lgamma(n) - 0.5 * q * math.log(n))


def _partial_fraction_coeffs(a, tol):
    """Coefficients c_j = prod_{k != j} a_j / (a_j - a_k).

    Requires nonzero, pairwise-distinct entries; these are the weights of
    the exponential mixture representation of the density.
    """
    n = a.size
    if np.any(a == 0.0):
        raise ZeroCoefficient("coefficients must be nonzero")
    if n > 1:
        gaps = np.abs(a[:, None] - a[None, :])
        np.fill_diagonal(gaps, np.inf)
        if gaps.min() < tol:
            raise DistinctnessViolation(
                f"coefficient gap below {tol}; mixture formula is singular"
            )
    c = np.empty(n)
    for j in range(n):
        d = a[j] - np.delete(a, j)
        c[j] = np.prod(a[j] / d)
    return c


def density_at(a, t, config=core.DEFAULT_CONFIG):
    """Density of sum a_i X_i at the point t.

    The density is a signed mixture of one-sided exponentials; at t = 0,
    where the mixture can jump, the average of the two one-sided limits
    is returned.
    """
    a = core.as_weights(a)
    t = float(t)
    c = _partial_fraction_coeffs(a, config.distinctness_tol)
    if t == 0.0:
        return float(0.5 * np.sum(c / np.abs(a)))
    if t > 0:
        mask = a > 0
    else:
        mask = a < 0
    if not np.any(mask):
        return 0.0
    aj = a[mask]
    return float(np.sum(c[mask] / np.abs(aj) * np.exp(-t / aj)))


def char_fn_real(a, t):
    """Real part of E exp(it * sum a_j X_j), in real arithmetic.

    Equals a polynomial in t (alternating even elementary symmetric
    coefficients) divided by prod_j (1 + a_j^2 t^2).
    """
    a = core.as_weights(a)
    num, den_sq = _char_fn_parts(a)
    t = float(t)
    t2 = t * t
    return _eval_poly(num, t2) / _eval_poly(den_sq, t2)


def _char_fn_parts(a):
    """Numerator and squared-denominator coefficients of Re(phi), in t^2."""
    n = a.size
    e = elem_all(a, n)
    m_even = np.arange(0, n + 1, 2)
    num = e[m_even] * np.where(m_even % 4 == 0, 1.0, -1.0)
    den_sq = elem_all(a * a, n)  # prod (1 + a_j^2 u) = sum e_m(a^2) u^m
    return num, den_sq


def _eval_poly(coef, x):
    return float(np.polynomial.polynomial.polyval(x, coef))


def _quad_checked(f, lo, hi, what, epsabs=1.49e-10, epsrel=1.49e-10, limit=200):
    out = integrate.quad(
        f, lo, hi, epsabs=epsabs, epsrel=epsrel, limit=limit, full_output=1
    )
    if len(out) > 3:
        raise NonConvergedQuadrature(f"{what}: {out[3]}")
    val, err = out[0], out[1]
    if err > 1e-7 * max(1.0, abs(val)):
        raise NonConvergedQuadrature(f"{what}: error estimate {err:.2e}")
    return val


def _check_exponent(q):
    q = float(q)
    if not q > -1.0:
        raise UnsupportedExponent("absolute moments require q > -1")
    return q


def _abs_moment_interpolation(a, q, tol):
    a = a[a != 0.0]
    if a.size == 0:
        if q == 0.0:
            return 1.0
        raise ZeroCoefficient("all coefficients are zero")
    c = _partial_fraction_coeffs(a, tol)
    return math.gamma(1.0 + q) * float(np.sum(np.abs(a) ** q * c))


def _abs_moment_density(a, q, tol):
    a = a[a != 0.0]
    if a.size == 0:
        if q == 0.0:
            return 1.0
        raise ZeroCoefficient("all coefficients are zero")
    c = _partial_fraction_coeffs(a, tol)
    total = 0.0
    for sign in (1.0, -1.0):
        mask = (a * sign) > 0
        if not np.any(mask):
            continue
        aj, cj = a[mask], c[mask]
        scale = float(np.max(np.abs(aj)))
        envelope = float(np.sum(np.abs(cj) / np.abs(aj)))

        def f(y, aj=aj, cj=cj, sign=sign):
            return abs(y) ** q * float(
                np.sum(cj / np.abs(aj) * np.exp(-y / aj))
            )

        # truncate where the exponential envelope bound drops below 1e-13
        hi = scale * (20.0 + 4.0 * max(q, 0.0))
        while envelope * (hi / scale) ** max(q, 0.0) * math.exp(-hi / scale) > 1e-14:
            hi *= 2.0
        total += _quad_checked(
            f, 0.0, sign * hi, "density quadrature"
        ) * sign
    return total


def _abs_moment_fourier(a, q):
    for lo, hi in FOURIER_WINDOWS:
        if lo < q < hi:
            break
    else:
        raise UnsupportedExponent(
            "fourier route requires q in (0,2), (2,4) or (4,6)"
        )
    scale = float(np.max(np.abs(a)))
    if scale == 0.0:
        return 0.0
    b = a / scale
    # Re(phi) = 1 - h_2 t^2 + h_4 t^4 - ...; below t0 = 1/2 the series
    # converges geometrically, above it the integrand is a smooth rational
    # function, so split there and treat each part exactly.
    t0 = 0.5
    h = h_all(b, 2 * _FOURIER_TERMS)
    series = 0.0
    for j in range(1, _FOURIER_TERMS + 1):
        term = h[2 * j] * t0 ** (2 * j - q) / (2 * j - q)
        series += -term if j % 2 == 0 else term
    num, den_sq = _char_fn_parts(b)

    def f(t):
        t2 = t * t
        re_phi = _eval_poly(num, t2) / _eval_poly(den_sq, t2)
        return (1.0 - re_phi) * t ** (-q - 1.0)

    tail = _quad_checked(f, t0, np.inf, "fourier quadrature")
    c_q = (2.0 / math.pi) * math.gamma(1.0 + q) * math.sin(q * math.pi / 2.0)
    return scale**q * c_q * (series + tail)


def _abs_moment_monte_carlo(a, q, mc):
    n = a.size
    total = 0.0
    total_sq = 0.0
    done = 0
    chunk_idx = 0
    while done < mc.samples:
        m = min(_MC_CHUNK, mc.samples - done)
        key = np.array([mc.seed, chunk_idx], dtype=np.uint64)
        rng = np.random.Generator(np.random.Philox(key=key))
        u = rng.random((m, n))
        y = -np.log(u) @ a
        v = np.abs(y) ** q
        total += float(np.sum(v))
        total_sq += float(np.sum(v * v))
        done += m
        chunk_idx += 1
    mean = total / mc.samples
    var = max(total_sq / mc.samples - mean * mean, 0.0)
    std_err = math.sqrt(var / (mc.samples - 1))
    return mean, std_err


def abs_moment(a, q, method="interpolation", mc=None, config=core.DEFAULT_CONFIG):
    """Absolute moment E|sum a_i X_i|^q, q > -1.

    Parameters
    ----------
    a : array_like
        Real weights.
    q : float
        Exponent, q > -1.  The fourier route additionally requires
        q in (0,2), (2,4) or (4,6).
    method : str
        One of "interpolation", "density_quadrature", "fourier",
        "monte_carlo".  The first two need pairwise-distinct weights
        (exact zeros are dropped first); fourier and monte_carlo accept
        repeated weights.
    mc : McSettings, optional
        Sampling plan for the monte_carlo route.
    config : EvalConfig
        Supplies the distinctness tolerance.

    Returns
    -------
    float, or (float, float) for monte_carlo
        The moment; monte_carlo also returns the standard error.
    """
    a = core.as_weights(a)
    q = _check_exponent(q)
    if method not in ABS_MOMENT_METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {ABS_MOMENT_METHODS}")
    if method == "interpolation":
        return _abs_moment_interpolation(a, q, config.distinctness_tol)
    if method == "density_quadrature":
        return _abs_moment_density(a, q, config.distinctness_tol)
    if method == "fourier":
        return _abs_moment_fourier(a, q)
    return _abs_moment_monte_carlo(a, q, mc if mc is not None else McSettings())


def borell_G(a, q):
    """E(a1 X1 + a2 X2)^q / Gamma(1+q) for nonnegative weights a = (a1, a2).

    Closed form (a1^(q+1) - a2^(q+1)) / (a1 - a2); log-concave in q on
    (-1, infinity).
    """
    a = core.as_weights(a)
    q = _check_exponent(q)
    if a.size != 2:
        raise ValueError("borell_G takes exactly two weights")
    if np.any(a < 0):
        raise ValueError("borell_G requires nonnegative weights")
    a1, a2 = float(max(a)), float(min(a))
    if a1 == 0.0:
        raise ZeroCoefficient("both weights are zero")
    if a1 - a2 < 1e-12 * a1:
        raise DistinctnessViolation("weights must be distinct")
    return (a1 ** (q + 1.0) - a2 ** (q + 1.0)) / (a1 - a2)


def two_group_density(alpha, beta, n_pos, n_neg, y):
    """Density of alpha*Gamma(n_pos) - beta*Gamma(n_neg) at the point y.

    The convolution integral reduces to a finite sum with positive terms
    on each half line, so the density is exact up to rounding; repeated
    weights pose no problem here.
    """
    if y >= 0:
        near, far = (alpha, n_pos), (beta, n_neg)
    else:
        near, far = (beta, n_neg), (alpha, n_pos)
    u = abs(y)
    lam = 1.0 / alpha + 1.0 / beta
    total = 0.0
    for j in range(near[1]):
        total += (
            math.comb(near[1] - 1, j)
            * u ** (near[1] - 1 - j)
            * math.gamma(far[1] + j)
            * lam ** -(far[1] + j)
        )
    norm = math.exp(
        -u / near[0] - n_pos * math.log(alpha) - n_neg * math.log(beta)
        - math.lgamma(n_pos) - math.lgamma(n_neg)
    )
    return norm * total


def two_group_abs_moment(alpha, beta, n_pos, n_neg, q):
    """E|alpha*(X_1+...+X_{n_pos}) - beta*(Y_1+...+Y_{n_neg})|^q.

    All variables are i.i.d. standard exponentials, alpha, beta > 0, and
    q > -1.  Computed by quadrature of |y|^q against the exact convolution
    density of the two group sums, which makes this the fallback route
    when repeated weights block the interpolation formula.
    """
    alpha = float(alpha)
    beta = float(beta)
    q = _check_exponent(q)
    if alpha <= 0 or beta <= 0:
        raise ValueError("group scales must be positive")
    if not (isinstance(n_pos, int) and isinstance(n_neg, int)) or min(n_pos, n_neg) < 1:
        raise ValueError("group sizes must be positive integers")

    def f(y):
        return abs(y) ** q * two_group_density(alpha, beta, n_pos, n_neg, y)

    hi = alpha * (40.0 + 8.0 * n_pos + 4.0 * max(q, 0.0))
    lo = -beta * (40.0 + 8.0 * n_neg + 4.0 * max(q, 0.0))
    return _quad_checked(f, lo, 0.0, "two-group quadrature") + _quad_checked(
        f, 0.0, hi, "two-group quadrature"
    )
