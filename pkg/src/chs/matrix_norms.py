"""Matrix norms built from complete homogeneous symmetric polynomials.

The norm of a real square matrix is h_d of its singular values, raised to
1/d (d even).  It sits between multiples of the operator norm, and the
sharp constants on both sides come from the extremal values of h_d on the
sup-norm sphere.
"""

import math

import numpy as np

from . import core, extremal
from .errors import ConvergenceFailure

MAX_DIM = 64
_JACOBI_SWEEPS = 60


def as_matrix(A):
    """Validate and return a dense square float matrix."""
    M = np.asarray(A, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("matrix must be square")
    if M.shape[0] == 0:
        raise ValueError("matrix must be non-empty")
    if M.shape[0] > MAX_DIM:
        raise ValueError(f"dimension above desk scale limit {MAX_DIM}")
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix entries must be finite")
    return M


def singular_values(A):
    """Singular values of A, sorted non-increasing.

    Cyclic Jacobi rotations on the symmetric matrix A^T A until the
    off-diagonal mass is negligible; eigenvalues are then the diagonal and
    the singular values their square roots.
    """
    M = as_matrix(A)
    n = M.shape[0]
    B = M.T @ M
    scale = np.trace(B)
    if scale == 0.0:
        return np.zeros(n)
    for _ in range(_JACOBI_SWEEPS):
        off = math.sqrt(np.sum(np.square(B - np.diag(np.diag(B)))))
        if off <= 1e-14 * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(B[p, q]) <= 1e-18 * scale:
                    continue
                # rotation angle that zeroes B[p, q]
                theta = 0.5 * math.atan2(2.0 * B[p, q], B[q, q] - B[p, p])
                c, s = math.cos(theta), math.sin(theta)
                rp = c * B[p, :] - s * B[q, :]
                rq = s * B[p, :] + c * B[q, :]
                B[p, :], B[q, :] = rp, rq
                cp = c * B[:, p] - s * B[:, q]
                cq = s * B[:, p] + c * B[:, q]
                B[:, p], B[:, q] = cp, cq
    else:
        raise ConvergenceFailure("Jacobi sweeps exhausted before convergence")
    eig = np.clip(np.diag(B), 0.0, None)
    return np.sort(np.sqrt(eig))[::-1]


def chs_norm(A, d):
    """h_d of the singular values, raised to 1/d, for even d >= 2."""
    if not isinstance(d, (int, np.integer)) or isinstance(d, bool):
        raise ValueError("d must be an integer")
    if d < 2 or d % 2:
        raise ValueError("d must be a positive even integer")
    s = singular_values(A)
    return core.h_eval(s, d) ** (1.0 / d)


def classical_norms(A, p):
    """Operator norm (p=inf) or Schatten-p norm of A."""
    s = singular_values(A)
    if p == math.inf:
        return float(s[0])
    p = float(p)
    if p < 1.0:
        raise ValueError("Schatten exponent must be >= 1")
    return float(np.sum(s**p) ** (1.0 / p))


def comparison_constants(n, d):
    """(lower, upper) with lower*op_norm <= chs_norm <= upper*op_norm.

    upper^d is h_d at the all-ones vector; the lower constant shrinks it
    by |t| where (t, ..., t, 1) minimizes h_d on the sup-norm sphere.
    """
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 2:
        raise ValueError("n must be an integer >= 2")
    if not isinstance(d, (int, np.integer)) or isinstance(d, bool) or d < 2 or d % 2:
        raise ValueError("d must be a positive even integer")
    k = d // 2
    upper = core.binom_float(n + d - 1, d) ** (1.0 / d)
    lower = upper * abs(extremal.linf_min(n, k).certificate["t"])
    return lower, upper


def load_matrix_csv(path):
    """Read a square matrix from CSV: one row per line, no header."""
    M = np.loadtxt(path, delimiter=",", ndmin=2)
    return as_matrix(M)


def random_matrix(n, rng):
    """Square matrix with entries drawn uniformly from [-1, 1]."""
    return rng.uniform(-1.0, 1.0, size=(n, n))
