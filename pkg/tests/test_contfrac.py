from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from conftest import pbf_bands
from tetrapbf import (CFStatus, OutOfRange, ZeroDenominator, convergents, evaluate_convergents,
                      finite_cf, gauss_borel, infinite_cf_estimate, jacobi_delta_ladder,
                      jacobi_determinant, nested_cf, tail_cf_estimate, toeplitz_bands)

T = toeplitz_bands(6, 11, 6)
F3 = gauss_borel(T, 3)


def test_base_case_is_m_k():
    assert finite_cf(F3.l, F3.m, 2, 1) == F(11, 6)
    assert finite_cf(F3.l, F3.m, 3, 2) == F(12, 5)


def test_two_level_value():
    assert finite_cf(F3.l, F3.m, 3, 1) == F(17, 12)


def test_jacobi_determinants():
    assert jacobi_determinant(F3.l, F3.m, 1) == F(11, 6)
    assert jacobi_determinant(F3.l, F3.m, 2) == F(17, 5)
    assert jacobi_determinant(F3.l, F3.m, 2, 3) == 1


def test_shifted_ladder_gives_next_minors():
    full = jacobi_delta_ladder(F3.l, F3.m, 2, 2)
    shifted = jacobi_delta_ladder(F3.l, F3.m, 1, 3, shifted=True)
    assert shifted[1] == 1
    assert list(shifted.values[2:]) == list(full.values[1:])


def test_cf_requires_n_above_k():
    with pytest.raises(OutOfRange):
        finite_cf(F3.l, F3.m, 1, 1)


def test_zero_denominator():
    # K[3,1] = m_1 - l_2 / m_2 with m_2 = 0
    with pytest.raises(ZeroDenominator):
        finite_cf([F(1)], [F(1), F(0)], 3, 1)


def test_toeplitz_limit_converges():
    ev = infinite_cf_estimate(T, tol=1e-9, maxN=60)
    assert ev.status == CFStatus.CONVERGED
    assert abs(ev.limit_estimate - F(6, 5)) < 1e-8
    assert ev.monotone_ok


def test_triple_root_limit_is_slow_but_correct():
    # beta = (1, 1, 1): convergence is algebraic, not geometric
    ev = infinite_cf_estimate(toeplitz_bands(1, 3, 3), tol=0, maxN=200)
    assert ev.monotone_ok
    assert abs(ev.limit_estimate - F(1, 2)) < F(1, 100)
    assert ev.limit_estimate > F(1, 2)


def test_tail_estimate_positive():
    ev = tail_cf_estimate(T, 1, tol=1e-9, maxN=80)
    assert ev.limit_estimate > 0 and ev.monotone_ok
    assert ev.convergents[0] == F3.m[1]


def test_near_zero_is_flagged():
    # m_1 shifted by -6/5: convergents fall to 0 at rate 1/2
    f = gauss_borel(T, 40)
    m = (f.m[0] - F(6, 5),) + f.m[1:]
    ev = evaluate_convergents(f.l, m, 1, 1e-9, 41)
    assert ev.status == CFStatus.INDETERMINATE_NEAR_ZERO


def test_aitken_is_diagnostic_only():
    ev = infinite_cf_estimate(T, tol=1e-6, maxN=60)
    assert ev.limit_estimate == ev.convergents[-1]
    assert abs(ev.aitken - 1.2) < 1e-6


@given(pbf_bands(min_depth=2, max_depth=6))
def test_euler_wallis_matches_nested(case):
    bands, _ = case
    f = gauss_borel(bands, bands.length)
    N = bands.length
    for k in range(1, N + 1):
        for n in range(k + 1, N + 2):
            assert finite_cf(f.l, f.m, n, k) == nested_cf(f.l, f.m, n, k)


@given(pbf_bands(min_depth=2, max_depth=6))
def test_ratio_of_minors(case):
    bands, _ = case
    f = gauss_borel(bands, bands.length)
    N = bands.length
    for k in range(1, N):
        for n in range(k + 1, N + 1):
            expected = jacobi_determinant(f.l, f.m, n - 1, k) / jacobi_determinant(f.l, f.m, n - 1, k + 1)
            assert finite_cf(f.l, f.m, n, k) == expected


@given(pbf_bands(min_depth=3, max_depth=6))
def test_convergents_positive_and_decreasing(case):
    bands, _ = case
    f = gauss_borel(bands, bands.length)
    values = convergents(f.l, f.m, 1)
    assert all(v > 0 for v in values)
    assert all(x > y for x, y in zip(values, values[1:]))


@given(pbf_bands(min_depth=3, max_depth=6), st.integers(0, 3))
def test_dual_recursion_in_k(case, k):
    bands, _ = case
    f = gauss_borel(bands, bands.length)
    N = bands.length
    if k + 3 > N + 1:
        return
    lhs = jacobi_determinant(f.l, f.m, N, k + 1)
    rhs = f.mm(k + 1) * jacobi_determinant(f.l, f.m, N, k + 2) - \
        f.ll(k + 2) * jacobi_determinant(f.l, f.m, N, k + 3)
    assert lhs == rhs
