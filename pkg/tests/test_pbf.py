import warnings
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from conftest import pbf_bands
from tetrapbf import (GateViolation, NonPositiveA, ZeroPivot, check_product, finite_cf,
                      gauss_borel, lower_bidiagonal_split, pbf_factorize, reconstruct_bands,
                      toeplitz_bands)

T = toeplitz_bands(6, 11, 6)


def test_split_at_zero():
    f = gauss_borel(T, 3)
    alphas = lower_bidiagonal_split(f.l, f.m, 0, 2)
    assert alphas[1:4] == (F(11, 6), F(6, 11), F(102, 55))


def test_split_at_one():
    f = gauss_borel(T, 2)
    assert lower_bidiagonal_split(f.l, f.m, 1, 2) == (1, F(5, 6), F(6, 5), F(6, 5))


def test_factorize_alpha2_one():
    fac = pbf_factorize(T, 1, 2)
    assert fac.all_positive and check_product(fac, T)
    assert fac.alphas == (6, 1, F(5, 6), F(25, 6), F(6, 5), F(6, 5), F(18, 5))


def test_depth_five_has_sixteen_positive_alphas():
    fac = pbf_factorize(T, 1, 5)
    assert len(fac.alphas) == 16 and fac.all_positive


def test_zero_pivot():
    with pytest.raises(ZeroPivot) as err, pytest.warns(GateViolation):
        pbf_factorize(T, F(11, 6), 5)
    assert err.value.n == 1


def test_gate_violation_warns():
    with pytest.warns(GateViolation):
        fac = pbf_factorize(T, F(3, 2), 3)
    assert not fac.all_positive


def test_default_alpha2_is_half_gate():
    fac = pbf_factorize(T, None, 4)
    f = gauss_borel(T, 4)
    assert fac.alpha2 == finite_cf(f.l, f.m, 5, 1) / 2 == fac.gate / 2


def test_reconstruct_all_ones():
    bands = reconstruct_bands([1] * 10)
    c, b, a = bands.arrays()
    assert c == [1, 3, 3, 3] and b == [2, 3, 3] and a == [1, 1]


def test_reconstruct_rejects_zero_a():
    with pytest.raises(NonPositiveA):
        reconstruct_bands([1, 1, 0, 1, 1, 1, 1])


def test_roundtrip_toeplitz():
    fac = pbf_factorize(T, 1, 6)
    assert reconstruct_bands(fac.alphas).same_as(T.truncate(6))


@given(pbf_bands(max_depth=6))
def test_reconstruct_then_factorize(case):
    bands, alphas = case
    N = bands.length
    fac = pbf_factorize(bands, alphas[1], N)
    assert fac.alphas == tuple(alphas)
    assert check_product(fac, bands)


@given(pbf_bands(min_depth=2, max_depth=6), st.fractions(min_value=F(1, 100), max_value=F(99, 100)))
def test_positive_inside_gate(case, t):
    bands, _ = case
    N = bands.length
    f = gauss_borel(bands, N)
    gate = finite_cf(f.l, f.m, N + 1, 1)
    with warnings.catch_warnings():
        warnings.simplefilter("error", GateViolation)
        fac = pbf_factorize(bands, gate * t, N)
    assert fac.all_positive and check_product(fac, bands)


@given(pbf_bands(min_depth=2, max_depth=6))
def test_gate_is_sharp(case):
    bands, _ = case
    N = bands.length
    f = gauss_borel(bands, N)
    gate = finite_cf(f.l, f.m, N + 1, 1)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", GateViolation)
        try:
            fac = pbf_factorize(bands, gate, N)
        except ZeroPivot:
            return
    # at alpha_2 = K[N+1,1] the last lower alpha vanishes
    assert fac.alphas[3 * N - 1] == 0
