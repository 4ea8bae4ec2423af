import math

import numpy as np
import pytest

from chs import core, extremal, moments
from chs.errors import BracketFailure, OddDimension, UnsupportedExponent

TABLE_NK = {
    5: 1.2900,
    6: 1.6958,
    7: 2.0989,
    8: 2.5006,
    9: 2.9014,
    10: 3.3015,
    11: 3.7012,
    12: 4.1005,
    13: 4.4997,
    14: 4.8986,
    15: 5.2974,
}


def hunter_closed(n, k):
    m = n // 2
    return math.exp(
        math.lgamma(m + k) - math.lgamma(k + 1) - math.lgamma(m) - k * math.log(n)
    )


def test_bisect_root_basics():
    r = extremal.bisect_root(lambda x: x * x - 2.0, 0.0, 2.0, tol=1e-14)
    assert abs(r - math.sqrt(2.0)) < 1e-13
    with pytest.raises(BracketFailure):
        extremal.bisect_root(lambda x: 1.0 + x * x, -1.0, 1.0)


def test_extremal_result_is_frozen():
    r = extremal.hunter_min(4, 2)
    with pytest.raises(Exception):
        r.value = 0.0


def test_hunter_min_closed_form_and_h_eval():
    for n in (2, 4, 6, 8):
        for k in range(1, 6):
            r = extremal.hunter_min(n, k)
            want = hunter_closed(n, k)
            assert abs(r.value - want) < 1e-13 * want
            direct = core.h_eval(r.argvec, 2 * k)
            assert abs(direct - r.value) < 1e-10 * r.value
            assert r.structure == extremal.STRUCTURE_HALF


def test_hunter_argvec_shape():
    r = extremal.hunter_min(6, 3)
    a = r.argvec
    assert np.all(np.isin(np.sign(a), (-1.0, 1.0)))
    assert abs(np.sum(a)) < 1e-15
    assert abs(np.dot(a, a) - 1.0) < 1e-15
    assert np.count_nonzero(a > 0) == 3


def test_hunter_h4_identity_even_n():
    for n in range(2, 21, 2):
        r = extremal.hunter_min(n, 2)
        want = 0.125 + 0.25 / n
        assert abs(r.value - want) < 1e-12
        assert abs(core.h_eval(r.argvec, 4) - want) < 1e-12


def test_hunter_rejects_odd_or_bad_input():
    with pytest.raises(OddDimension):
        extremal.hunter_min(3, 2)
    with pytest.raises(ValueError):
        extremal.hunter_min(1, 1)
    with pytest.raises(ValueError):
        extremal.hunter_min(4, 0)
    with pytest.raises(ValueError):
        extremal.hunter_min(4.0, 1)


def test_hunter_dominates_1977_bound():
    # The product lower bound is exact for k=1 and strictly loose afterwards.
    for n in (2, 4, 6):
        a = extremal.hunter_min(n, 1).argvec
        assert abs(core.hunter_1977_bound(a, 1) - extremal.hunter_min(n, 1).value) < 1e-12
        for k in (2, 3, 4):
            assert core.hunter_1977_bound(a, k) < extremal.hunter_min(n, k).value


def test_rho1_closed_values():
    assert abs(extremal.rho1(3) - (5.0 - 3.0 * math.sqrt(2.0))) < 1e-14
    for n in (3, 5, 7, 9, 15, 21):
        c = extremal.rho1(n)
        # c is the root of the quadratic coming from the discriminant condition
        res = (1 - n * n) * c * c + (-4 + 7 * n + 4 * n * n + n**3) * c - 2 * (
            7 + 4 * n + n * n
        )
        assert abs(res) < 1e-9 * n**3
        assert 2.0 / n <= c <= 2.0 / (n - 1)
    assert abs(10001 * extremal.rho1(10001) - 2.0) < 1e-6


def test_h4_unconditional_even():
    for n in (2, 4, 6, 10):
        lo, hi = extremal.h4_unconditional(n)
        assert lo.value == extremal.hunter_min(n, 2).value
        flat = np.full(n, n**-0.5)
        assert abs(hi.value - core.h_eval(flat, 4)) < 1e-14
        assert hi.structure == extremal.STRUCTURE_FLAT


def test_h4_unconditional_odd_n3():
    lo, _ = extremal.h4_unconditional(3)
    exact = 3.0 * (2.0 * 2.0 ** (1.0 / 3.0) - 1.0) / (4.0 * (1.0 + 2.0 ** (1.0 / 3.0)) ** 2)
    assert abs(lo.value - exact) < 1e-14
    assert abs(lo.value - 0.22318921206051354) < 1e-13
    assert abs(lo.certificate["x"] - (-(2.0 ** (2.0 / 3.0)))) < 1e-12
    assert abs(core.h_eval(lo.argvec, 4) - lo.value) < 1e-13
    assert lo.structure == extremal.STRUCTURE_TWO_BLOCK
    # the two-block discriminant bound is strict here: no vector attains it
    assert lo.value > lo.certificate["lower_bound"] + 1e-3


def test_h4_unconditional_odd_n5():
    lo, _ = extremal.h4_unconditional(5)
    assert abs(lo.value - 0.1784922630775704) < 1e-13
    assert abs(core.h_eval(lo.argvec, 4) - lo.value) < 1e-13
    assert lo.value > (1.0 + extremal.rho1(5)) / 8.0
    a = np.sort(lo.argvec)
    assert abs(np.dot(a, a) - 1.0) < 1e-12
    # two blocks: 2 entries of one sign, 3 of the other
    assert len(np.unique(np.round(a, 9))) == 2


def test_h4_min_decreases_with_dimension():
    vals = [extremal.h4_unconditional(n)[0].value for n in range(2, 9)]
    assert all(x > y for x, y in zip(vals, vals[1:]))
    # limit is 1/8 from above
    assert vals[-1] > 0.125


def test_h4_odd_min_beats_random_search():
    rng = np.random.default_rng(11)
    for n in (3, 5, 7):
        lo, _ = extremal.h4_unconditional(n)
        for _ in range(300):
            a = rng.normal(size=n)
            a /= np.linalg.norm(a)
            assert core.h_eval(a, 4) >= lo.value - 1e-9


def test_nonneg_min_small_k_is_factorial():
    for n in (1, 3, 6):
        for k in range(0, 6):
            r = extremal.nonneg_min(n, k)
            assert r.certificate["support"] == 1
            assert r.value == float(math.factorial(k))
            assert r.argvec[0] == 1.0


def test_nonneg_min_k7_support2():
    r = extremal.nonneg_min(4, 7)
    assert r.certificate["support"] == 2
    assert abs(r.value - 3563.8181771801974) < 1e-9
    assert r.value < moments.rho(1, 7) == 5040.0
    assert r.value < moments.rho(3, 7)
    assert abs(np.dot(r.argvec, r.argvec) - 1.0) < 1e-15
    assert abs(moments.integer_moment(r.argvec, 7) - r.value) < 1e-10 * r.value


def test_nonneg_min_matches_direct_rho_scan():
    for n in (2, 5, 8):
        for k in (3, 7, 9, 12):
            r = extremal.nonneg_min(n, k)
            best = min(moments.rho(m, k) for m in range(1, n + 1))
            assert abs(r.value - best) < 1e-12 * best


def test_nk_continuous_reproduces_table():
    for k, want in TABLE_NK.items():
        assert abs(extremal.nk_continuous(k) - want) < 5e-4


def test_nk_continuous_root_residual():
    for k in (5, 9, 15, 50):
        n = extremal.nk_continuous(k)
        res = sum(1.0 / (n + j) for j in range(k)) - k / (2.0 * n)
        assert abs(res) < 1e-8
    assert abs(extremal.nk_continuous(5) - 1.2900415686136621) < 1e-10
    with pytest.raises(ValueError):
        extremal.nk_continuous(2)


def test_u0_ratio_and_slope():
    u0 = extremal.u0_ratio()
    assert abs(u0 - 2.512862417252421) < 1e-12
    assert abs(math.log1p(u0) - u0 / 2.0) < 1e-12
    assert abs(u0 - 2.51) < 0.01
    assert abs(extremal.nk_continuous(200) / 200.0 - 1.0 / u0) < 2e-2


def test_rho_unimodal_on_integer_grid():
    for k in (3, 7, 11, 15):
        nk = extremal.nk_continuous(k)
        vals = [moments.rho(m, k) for m in range(1, 12)]
        diffs = np.sign(np.diff(vals))
        # decreasing then increasing, with the switch next to the continuous root
        switches = np.nonzero(np.diff(diffs))[0]
        assert len(switches) <= 1
        m_best = int(np.argmin(vals)) + 1
        assert m_best in (math.floor(nk), math.ceil(nk)) or nk < 1.0


def test_gamma_pair_moment_poly_figure_values():
    p = extremal.gamma_pair_moment_poly(6, 1, 7)
    assert p == [5040, 30240, 105840, 282240, 635040, 1270080, 2328480, 3991680]
    assert all(isinstance(c, int) for c in p)
    assert sum(p) == 8648640  # E(Gamma(7))^7 = 13!/6!


def test_gamma_pair_moment_poly_matches_moment_route():
    # E(x*Gamma(2) + Gamma(3))^4 equals the weighted exponential sum moment
    p = extremal.gamma_pair_moment_poly(2, 3, 4)
    for x in (0.3, 0.7, 1.9):
        direct = float(np.polyval(p[::-1], x))
        a = np.array([x, x, 1.0, 1.0, 1.0])
        assert abs(direct - moments.integer_moment(a, 4)) < 1e-12 * direct


def test_gamma_pair_moment_poly_validation():
    with pytest.raises(ValueError):
        extremal.gamma_pair_moment_poly(0, 1, 3)
    with pytest.raises(ValueError):
        extremal.gamma_pair_moment_poly(1, 1, -1)


def test_nonneg_max_flat_when_k_small():
    r = extremal.nonneg_max(7, 7)
    assert r.structure == extremal.STRUCTURE_FLAT
    assert r.certificate["x"] == 1.0
    assert abs(r.value - moments.rho(7, 7)) < 1e-9 * r.value


def test_nonneg_max_interior_spike():
    r = extremal.nonneg_max(7, 10)
    assert r.structure == extremal.STRUCTURE_S_THEN_T
    assert abs(r.certificate["x"] - 0.12499938987475138) < 1e-8
    assert abs(r.value - 5165641.521482239) < 1e-9 * r.value
    a = r.argvec
    assert np.all(a >= 0) and abs(np.dot(a, a) - 1.0) < 1e-12
    assert abs(moments.integer_moment(a, 10) - r.value) < 1e-10 * r.value
    # spike beats both the flat vector and the single coordinate
    assert r.value > moments.rho(7, 10)
    assert r.value > math.factorial(10)


def test_nonneg_max_frozen_values():
    cases = {
        (5, 9): 472350.37568877905,
        (4, 6): 1020.807766447256,
        (3, 12): 525332830.2821691,
        (2, 5): 138.15221621851515,
    }
    for (n, k), want in cases.items():
        r = extremal.nonneg_max(n, k)
        assert abs(r.value - want) < 1e-8 * want


def test_nonneg_max_dominates_random_nonneg_vectors():
    rng = np.random.default_rng(23)
    for n, k in ((3, 6), (4, 9)):
        r = extremal.nonneg_max(n, k)
        for _ in range(400):
            a = rng.random(n)
            a /= np.linalg.norm(a)
            assert moments.integer_moment(a, k) <= r.value * (1.0 + 1e-9)


def test_centred_min_is_hunter_for_even_n():
    for n in (2, 4, 8):
        for k in (1, 2, 3):
            assert extremal.centred_min(n, k).value == extremal.hunter_min(n, k).value
    with pytest.raises(OddDimension):
        extremal.centred_min(3, 2)


def test_centred_max_small_case():
    r = extremal.centred_max(3, 2)
    assert abs(r.value - 0.25) < 1e-12
    assert abs(np.sum(r.argvec**4) - 0.5) < 1e-12
    assert abs(np.sum(r.argvec)) < 1e-12
    assert abs(np.dot(r.argvec, r.argvec) - 1.0) < 1e-12
    assert r.structure == extremal.STRUCTURE_ONE_AGAINST_REST


def test_centred_max_dominates_random_zero_sum():
    rng = np.random.default_rng(37)
    for n, k in ((3, 1), (3, 2), (4, 2), (5, 3)):
        r = extremal.centred_max(n, k)
        for _ in range(500):
            a = rng.normal(size=n)
            a -= a.mean()
            a /= np.linalg.norm(a)
            assert core.h_eval(a, 2 * k) <= r.value + 1e-9


def test_centred_p_max_matches_power_sums():
    assert abs(extremal.centred_p_max(3, 3) - 1.0 / math.sqrt(6.0)) < 1e-14
    for n in (2, 3, 4, 6):
        a = extremal.centred_max(n, 1).argvec
        for m in range(1, 6):
            assert abs(extremal.centred_p_max(n, m) - core.power_sum(a, m)) < 1e-12


def test_centred_h4_min_even_and_odd():
    for n in (2, 4, 6):
        assert extremal.centred_h4_min(n).value == extremal.hunter_min(n, 2).value
    r5 = extremal.centred_h4_min(5)
    assert abs(r5.value - 11.0 / 60.0) < 1e-13
    assert abs(r5.certificate["fourth_power_sum"] - 7.0 / 30.0) < 1e-13
    assert abs(np.sum(r5.argvec**4) - 7.0 / 30.0) < 1e-12
    r7 = extremal.centred_h4_min(7)
    assert abs(r7.value - 55.0 / 336.0) < 1e-13
    for r, n in ((r5, 5), (r7, 7)):
        assert abs(np.sum(r.argvec)) < 1e-12
        assert abs(np.dot(r.argvec, r.argvec) - 1.0) < 1e-12
        assert abs(core.h_eval(r.argvec, 4) - r.value) < 1e-13


def test_centred_h4_min_dominated_by_random_zero_sum():
    rng = np.random.default_rng(41)
    for n in (4, 5, 7):
        r = extremal.centred_h4_min(n)
        for _ in range(500):
            a = rng.normal(size=n)
            a -= a.mean()
            a /= np.linalg.norm(a)
            assert core.h_eval(a, 4) >= r.value - 1e-9


def test_centred_n3_integer_constants():
    for q, want in ((0, 1.0), (2, 1.0), (4, 6.0)):
        lo, hi = extremal.centred_n3_bounds(q)
        assert lo.value == want and hi.value == want
        assert lo.certificate == {"constant": True}


def test_centred_n3_q3():
    lo, hi = extremal.centred_n3_bounds(3.0)
    assert abs(hi.value - 3.0 / math.sqrt(2.0)) < 1e-9
    assert abs(lo.value - 2.086602373481967) < 1e-9
    assert lo.value < hi.value
    assert np.allclose(lo.argvec, extremal.X1_VECTOR)
    assert np.allclose(hi.argvec, extremal.X2_VECTOR)


def test_centred_n3_window_flips():
    # which of the two candidate vectors wins alternates between windows
    frozen = {
        -0.5: (1.9505901321671562, 2.1078147305108117, "x1_low"),
        0.5: (0.7452250447145452, 0.7648668322520688, "x2_low"),
        1.5: (0.7904305239415546, 0.8019175541495951, "x2_low"),
        3.5: (3.413641374687507, 3.4581335422443, "x1_low"),
        5.0: (21.213203435596423, 22.378054440241385, "x2_low"),
        5.5: (42.794402585273225, 46.93831582529105, "x2_low"),
        7.0: (445.4772721475249, 569.4307636618181, "x2_low"),
    }
    for q, (lo_want, hi_want, who) in frozen.items():
        lo, hi = extremal.centred_n3_bounds(q)
        assert abs(lo.value - lo_want) < 1e-9 * max(1.0, lo_want)
        assert abs(hi.value - hi_want) < 1e-9 * max(1.0, hi_want)
        low_vec = extremal.X1_VECTOR if who == "x1_low" else extremal.X2_VECTOR
        assert np.allclose(lo.argvec, low_vec)


def test_centred_n3_x2_value_is_laplace_moment():
    # the plus/minus vector gives |X1 - X2|/sqrt(2), a Laplace variable
    for q in (0.5, 1.5, 3.5, 5.0, 7.0):
        lo, hi = extremal.centred_n3_bounds(q)
        want = math.gamma(1.0 + q) / 2.0 ** (q / 2.0)
        got = min(lo.value, hi.value, key=lambda v: abs(v - want))
        assert abs(got - want) < 1e-12 * want


def test_centred_n3_values_match_moment_routes():
    for q in (0.5, 3.0, 5.5):
        lo, hi = extremal.centred_n3_bounds(q)
        v1 = moments.abs_moment(extremal.X1_VECTOR, q, method="fourier")
        v2 = moments.abs_moment(extremal.X2_VECTOR, q, method="interpolation")
        assert abs(min(lo.value, hi.value) - min(v1, v2)) < 1e-8 * min(v1, v2)
        assert abs(max(lo.value, hi.value) - max(v1, v2)) < 1e-8 * max(v1, v2)


def test_centred_n3_bounds_on_circle_samples():
    # every zero-sum unit vector sits inside the closed bounds
    rng = np.random.default_rng(53)
    for q in (0.5, 3.0, 5.0):
        lo, hi = extremal.centred_n3_bounds(q)
        for _ in range(60):
            a = rng.normal(size=3)
            a -= a.mean()
            a /= np.linalg.norm(a)
            if np.min(np.abs(a[:, None] - a[None, :]) + np.eye(3)) < 1e-4:
                continue
            v = moments.abs_moment(a, q, method="interpolation")
            assert lo.value - 1e-7 <= v <= hi.value + 1e-7


def test_centred_n3_refusals():
    with pytest.raises(UnsupportedExponent):
        extremal.centred_n3_bounds(-1.0)
    with pytest.raises(UnsupportedExponent):
        extremal.centred_n3_bounds(6.5)
    # integer exponents above the windows still work
    lo, hi = extremal.centred_n3_bounds(8)
    assert lo.value < hi.value


def test_linf_min_hand_cases():
    r = extremal.linf_min(2, 1)
    assert abs(r.certificate["t"] + 0.5) < 1e-12
    assert abs(r.value - 0.75) < 1e-12
    assert np.allclose(r.argvec, [-0.5, 1.0])
    assert r.structure == extremal.STRUCTURE_T_THEN_ONE

    r = extremal.linf_min(2, 2)
    assert abs(r.certificate["t"] + 0.6058295861882799) < 1e-9
    assert abs(r.value - 0.6735532234764627) < 1e-9
    direct = core.h_eval(np.array([r.certificate["t"], 1.0]), 4)
    assert abs(r.value - direct) < 1e-9

    r = extremal.linf_min(3, 1)
    assert abs(r.certificate["t"] + 1.0 / 3.0) < 1e-12
    assert abs(r.value - 2.0 / 3.0) < 1e-12


def test_linf_min_consistency_grid():
    for n in (2, 3, 4, 5):
        for k in (1, 2, 3):
            r = extremal.linf_min(n, k)
            t = r.certificate["t"]
            assert -1.0 < t < 0.0
            want = core.binom_float(n + 2 * k - 1, 2 * k) * t ** (2 * k)
            assert abs(r.value - want) < 1e-12 * want
            assert abs(core.h_eval(r.argvec, 2 * k) - r.value) < 1e-9 * r.value
            g = core.h_grad(r.argvec, 2 * k)
            assert np.max(np.abs(g[: n - 1])) < 1e-8


def test_linf_min_frozen_roots():
    assert abs(extremal.linf_min(4, 3).certificate["t"] + 0.4106732627679801) < 1e-10
    assert abs(extremal.linf_min(5, 2).certificate["t"] + 0.2815819176269193) < 1e-10
    assert abs(extremal.linf_min(5, 2).value - 0.4400652635227712) < 1e-12


def test_linf_root_limit_towards_minus_one():
    # value checked against 50-digit polynomial root isolation
    assert abs(extremal.linf_min(3, 40).certificate["t"] + 0.889485056690479) < 1e-10
    ts = [extremal.linf_min(3, k).certificate["t"] for k in (1, 2, 5, 10, 20, 40)]
    assert all(a > b for a, b in zip(ts, ts[1:]))
    assert extremal.linf_min(3, 320).certificate["t"] < -0.95


def test_linf_min_dominates_cube_samples():
    rng = np.random.default_rng(61)
    for n, k in ((2, 1), (2, 2), (3, 1), (3, 2)):
        r = extremal.linf_min(n, k)
        for _ in range(200):
            v = np.append(rng.uniform(-1.0, 1.0, n - 1), 1.0)
            assert core.h_eval(v, 2 * k) >= r.value - 1e-9
