import math

import numpy as np
import pytest

from chs import matrix_norms as mn


def householder(v):
    v = v / np.linalg.norm(v)
    return np.eye(len(v)) - 2.0 * np.outer(v, v)


def test_singular_values_identity():
    assert np.allclose(mn.singular_values(np.eye(3)), [1.0, 1.0, 1.0])


def test_singular_values_diagonal_signs():
    s = mn.singular_values(np.diag([3.0, -4.0]))
    assert np.allclose(s, [4.0, 3.0], atol=1e-12)


def test_singular_values_constructed_factorization():
    rng = np.random.default_rng(19)
    d = np.array([5.0, 2.5, 1.0, 0.25])
    U = householder(rng.normal(size=4))
    V = householder(rng.normal(size=4))
    s = mn.singular_values(U @ np.diag(d) @ V.T)
    assert np.max(np.abs(s - d)) < 1e-8


def test_singular_values_match_lapack():
    rng = np.random.default_rng(29)
    for _ in range(60):
        n = int(rng.integers(1, 9))
        A = mn.random_matrix(n, rng)
        s = mn.singular_values(A)
        ref = np.linalg.svd(A, compute_uv=False)
        assert np.all(np.diff(s) <= 0) and np.all(s >= 0)
        assert np.max(np.abs(s - ref)) < 1e-10 * max(ref[0], 1.0)


def test_singular_values_frobenius_consistency():
    rng = np.random.default_rng(31)
    for _ in range(40):
        A = mn.random_matrix(int(rng.integers(2, 7)), rng)
        s = mn.singular_values(A)
        fro2 = float(np.sum(A * A))
        assert abs(float(np.sum(s * s)) - fro2) < 1e-8 * max(1.0, fro2)


def test_singular_values_large_dimension_cap():
    rng = np.random.default_rng(43)
    A = mn.random_matrix(64, rng)
    s = mn.singular_values(A)
    ref = np.linalg.svd(A, compute_uv=False)
    assert np.max(np.abs(s - ref)) < 1e-10 * ref[0]
    with pytest.raises(ValueError):
        mn.singular_values(np.zeros((65, 65)))


def test_matrix_validation():
    with pytest.raises(ValueError):
        mn.singular_values(np.zeros((2, 3)))
    with pytest.raises(ValueError):
        mn.singular_values(np.array([[1.0, np.nan], [0.0, 1.0]]))
    with pytest.raises(ValueError):
        mn.singular_values(np.zeros((0, 0)))


def test_chs_norm_hand_values():
    assert abs(mn.chs_norm(np.eye(2), 2) - math.sqrt(3.0)) < 1e-14
    n = 5
    want = math.sqrt(n * (n + 1) / 2.0)
    assert abs(mn.chs_norm(np.eye(n), 2) - want) < 1e-12
    assert abs(mn.chs_norm(np.diag([1.0, 0.0]), 2) - 1.0) < 1e-14
    assert mn.chs_norm(np.zeros((3, 3)), 4) == 0.0


def test_chs_norm_rejects_odd_degree():
    for bad in (0, 1, 3, -2, 2.0):
        with pytest.raises(ValueError):
            mn.chs_norm(np.eye(2), bad)


def test_classical_norms_hand_values():
    A = np.diag([3.0, -4.0])
    assert abs(mn.classical_norms(A, math.inf) - 4.0) < 1e-12
    assert abs(mn.classical_norms(A, 2.0) - 5.0) < 1e-12
    assert abs(mn.classical_norms(np.eye(4), 1.0) - 4.0) < 1e-12
    with pytest.raises(ValueError):
        mn.classical_norms(A, 0.5)


def test_h2_sum_of_squares_identity():
    rng = np.random.default_rng(47)
    for _ in range(50):
        A = mn.random_matrix(int(rng.integers(2, 6)), rng)
        s1 = mn.classical_norms(A, 1.0)
        s2 = mn.classical_norms(A, 2.0)
        lhs = mn.chs_norm(A, 2) ** 2
        assert abs(lhs - 0.5 * (s2 * s2 + s1 * s1)) < 1e-9


def test_comparison_constants_hand_values():
    lo, up = mn.comparison_constants(2, 2)
    assert abs(up - math.sqrt(3.0)) < 1e-14
    assert abs(lo - math.sqrt(3.0) / 2.0) < 1e-12
    lo, up = mn.comparison_constants(2, 4)
    assert abs(up - 5.0**0.25) < 1e-14
    assert abs(lo - 5.0**0.25 * 0.6058295861882799) < 1e-9


def test_comparison_sandwich_sampled():
    rng = np.random.default_rng(53)
    for n, d in ((2, 2), (3, 2), (2, 4), (4, 4)):
        lo, up = mn.comparison_constants(n, d)
        for _ in range(100):
            A = mn.random_matrix(n, rng)
            op = mn.classical_norms(A, math.inf)
            cn = mn.chs_norm(A, d)
            assert lo * op <= cn + 1e-9
            assert cn <= up * op + 1e-9


def test_upper_bound_attained_at_scaled_identity():
    rng = np.random.default_rng(59)
    for n, d in ((2, 2), (3, 4), (4, 2)):
        _, up = mn.comparison_constants(n, d)
        c = float(rng.uniform(0.2, 4.0))
        assert abs(mn.chs_norm(c * np.eye(n), d) - up * c) < 1e-12 * up * c


def test_chs_norm_axioms_sampled():
    rng = np.random.default_rng(61)
    for _ in range(40):
        n = int(rng.integers(2, 5))
        A = mn.random_matrix(n, rng)
        B = mn.random_matrix(n, rng)
        c = float(rng.normal())
        for d in (2, 4):
            na, nb = mn.chs_norm(A, d), mn.chs_norm(B, d)
            assert abs(mn.chs_norm(c * A, d) - abs(c) * na) < 1e-9 * max(1.0, na)
            assert mn.chs_norm(A + B, d) <= na + nb + 1e-9


def test_csv_roundtrip(tmp_path):
    A = np.array([[1.5, -2.0], [0.25, 3.0]])
    path = tmp_path / "mat.csv"
    with open(path, "w") as f:
        for row in A:
            f.write(",".join(f"{x!r}" for x in map(float, row)) + "\n")
    M = mn.load_matrix_csv(path)
    assert np.array_equal(M, A)
    with open(path, "w") as f:
        f.write("1.0,2.0\n3.0\n")
    with pytest.raises(ValueError):
        mn.load_matrix_csv(path)
