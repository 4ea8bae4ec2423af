"""Pure numpy fallback for the compiled recurrence kernels.

Same entry points as ``chs._kernels`` (the Cython module). Batched variants
vectorize across rows, so the per-call Python overhead is O(n*k) numpy ops
regardless of batch size.

All h values come from the generating-function recurrence: processing one
variable a_i multiplies the truncated series by 1/(1 - a_i t), i.e.
h[m] += a_i * h[m-1] with m ascending. Gradients use
d h_k / d a_i = h_{k-1}(a, a_i) = sum_r a_i^r h_{k-1-r}(a), evaluated by
Horner in a_i.
"""

import numpy as np


def h_all(a, kmax):
    """Table h_0(a), ..., h_kmax(a)."""
    a = np.asarray(a, dtype=float)
    h = np.zeros(kmax + 1)
    h[0] = 1.0
    for ai in a:
        for m in range(1, kmax + 1):
            h[m] += ai * h[m - 1]
    return h


def elem_all(a, kmax):
    """Table e_0(a), ..., e_kmax(a) of elementary symmetric polynomials."""
    a = np.asarray(a, dtype=float)
    e = np.zeros(kmax + 1)
    e[0] = 1.0
    for ai in a:
        for m in range(kmax, 0, -1):
            e[m] += ai * e[m - 1]
    return e


def h_batch(X, k):
    """h_k per row of X (shape (B, n)) -> shape (B,)."""
    X = np.asarray(X, dtype=float)
    B, n = X.shape
    H = np.zeros((B, k + 1))
    H[:, 0] = 1.0
    for i in range(n):
        ai = X[:, i]
        for m in range(1, k + 1):
            H[:, m] += ai * H[:, m - 1]
    return H[:, k].copy()


def h_grad_batch(X, k):
    """(h_k, grad h_k) per row of X -> shapes (B,), (B, n). Requires k >= 1."""
    X = np.asarray(X, dtype=float)
    B, n = X.shape
    H = np.zeros((B, k + 1))
    H[:, 0] = 1.0
    for i in range(n):
        ai = X[:, i]
        for m in range(1, k + 1):
            H[:, m] += ai * H[:, m - 1]
    vals = H[:, k].copy()
    # Horner over r in h_{k-1-r}, highest power of a_i first
    grad = np.ones((B, n)) * H[:, 0][:, None]
    for m in range(1, k):
        grad = H[:, m][:, None] + X * grad
    return vals, grad
