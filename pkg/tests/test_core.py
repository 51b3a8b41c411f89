import threading
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from conftest import pbf_bands
from tetrapbf import (AUXILIARY, PRINCIPAL, BandSpec, LengthMismatch, NonPositiveA, OutOfRange,
                      Truncation, cofactor_determinant, delta1_ladder, delta_ladder,
                      dense_determinant, make_bands, materialize, to_scalar, toeplitz_bands)

T = toeplitz_bands(6, 11, 6)


def test_make_bands_lengths():
    assert make_bands([6, 6, 6, 6], [11, 11, 11], [6, 6]).length == 3
    with pytest.raises(LengthMismatch):
        make_bands([1, 2], [1, 2], [])
    with pytest.raises(NonPositiveA) as err:
        make_bands([1, 1, 1], [1, 1], [0])
    assert err.value.n == 2


def test_entries_below_band_start_are_zero():
    assert T.b(0) == 0 and T.a(1) == 0 and T.a(0) == 0


def test_finite_bands_out_of_range():
    with pytest.raises(OutOfRange):
        make_bands([1, 2], [3], []).c(2)


def test_lazy_nonpositive_a_is_rejected():
    bands = BandSpec.from_functions(lambda n: 1, lambda n: 1, lambda n: 3 - n)
    assert bands.a(2) == 1
    with pytest.raises(NonPositiveA):
        bands.a(3)


def test_lazy_entries_are_memoized_across_threads():
    calls = []

    def c(n):
        calls.append(n)
        return n + 1

    bands = BandSpec.from_functions(c, lambda n: 1, lambda n: 1)
    threads = [threading.Thread(target=lambda: [bands.c(n) for n in range(50)]) for _ in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert [bands.c(n) for n in range(50)] == list(range(1, 51))
    assert set(calls) == set(range(50))


def test_to_scalar():
    assert to_scalar("25/6") == F(25, 6)
    assert to_scalar("0.1") == F(1, 10)
    assert to_scalar("0.1", exact=False) == 0.1
    with pytest.raises(TypeError):
        to_scalar(True)


def test_materialize_principal_and_auxiliary():
    assert materialize(Truncation(T, 1)) == [[6, 1], [11, 6]]
    assert materialize(Truncation(T, 2, 0, AUXILIARY)) == [[11, 6], [6, 11]]
    assert materialize(Truncation(T, 3, 0, AUXILIARY)) == [[11, 6, 1], [6, 11, 6], [0, 6, 11]]
    with pytest.raises(OutOfRange):
        Truncation(T, 2, 3)


def test_delta_ladder_toeplitz():
    assert list(delta_ladder(T, 4)) == [1, 6, 25, 90, 301]


def test_delta_ladder_sign_change():
    # c = 1, b = 11: D(2) = 1 * 1 - 11 * 1
    assert delta_ladder(toeplitz_bands(6, 11, 1), 2)[2] == -10


def test_delta1_ladder_toeplitz():
    assert list(delta1_ladder(T.truncate(3), 3)) == [575, 85, 11, 1]
    assert list(delta1_ladder(T.truncate(2), 2)) == [85, 11, 1]


def test_determinant_routines_agree_on_small_matrix():
    m = [[F(1, 2), 1, 0], [3, F(-2, 3), 1], [5, 7, 2]]
    assert dense_determinant(m) == cofactor_determinant(m)


@given(pbf_bands())
def test_ladder_matches_dense_oracle(case):
    bands, _ = case
    N = bands.length
    D = delta_ladder(bands, N + 1)
    for n in range(N + 1):
        block = materialize(Truncation(bands, n))
        assert D[n + 1] == cofactor_determinant(block) == dense_determinant(block)


@given(st.lists(st.lists(st.floats(-5, 5, allow_nan=False), min_size=4, max_size=4),
                min_size=4, max_size=4))
def test_float_determinant_close_to_exact(rows):
    exact = cofactor_determinant([[F(x) for x in r] for r in rows])
    approx = dense_determinant(rows)
    assert abs(approx - float(exact)) <= 1e-9 * max(1.0, abs(float(exact))) + 1e-9


def test_shift_and_truncate():
    bands = make_bands([1, 2, 3, 4], [5, 6, 7], [8, 9])
    sh = bands.shift(1)
    assert sh.arrays() == ([2, 3, 4], [6, 7], [9])
    assert bands.truncate(2).arrays() == ([1, 2, 3], [5, 6], [8])
