"""Constructions that turn an oscillatory banded matrix into ones with a PBF.

* retraction ``T_s = E_{1,2}(s) T``: adds ``s`` times row 0 to row 1;
* tails ``T^(k+1)``: Schur complement of the leading ``k x k`` block;
* check matrices ``Ť``: band substitution ``c' = b``, ``b' = a c``, ``a' = a a``.

All results are :class:`BandSpec` objects that are lazy when the input is.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .core import BandSpec, PRINCIPAL, Truncation, make_bands, materialize, matmul
from .errors import OutOfRange
from .gauss_borel import gauss_borel

RETRACTION = "retraction"
TAIL = "tail"
CHECK = "check"
CHECK_SHIFTED = "check_shifted"


@dataclass(frozen=True)
class TransformRecord:
    kind: str
    input: BandSpec
    output: BandSpec
    param: object = None
    provenance: dict = field(default_factory=dict)


def _out_length(bands: BandSpec, N: Optional[int], need: int) -> Optional[int]:
    """Length of the output bands; the source must reach index ``N + need``."""
    if N is None:
        if bands.length is None:
            return None
        N = bands.length - need
    if N < 0 or (bands.length is not None and N + need > bands.length):
        raise OutOfRange(f"source bands end at {bands.length}, need index {N + need}")
    return N


def retract(bands: BandSpec, s) -> BandSpec:
    """``b_1 -> b_1 + s c_0`` and ``c_1 -> c_1 + s``; everything else unchanged.

    Leading minors are unchanged, and ``m_1`` (hence every ``K[n,1]``)
    moves by exactly ``s``.
    """
    if bands.length is not None and bands.length < 1:
        raise OutOfRange("retraction needs at least two rows")

    def c(n):
        return bands.c(n) + s if n == 1 else bands.c(n)

    def b(n):
        return bands.b(n) + s * bands.c(0) if n == 1 else bands.b(n)

    return BandSpec(c, b, bands.a, length=bands.length, name=f"retract({s})")


def retract_record(bands: BandSpec, s) -> TransformRecord:
    out = retract(bands, s)
    return TransformRecord(RETRACTION, bands, out, s,
                           {"c_1": out.c(1), "b_1": out.b(1)})


def _tail_head(bands: BandSpec, k: int):
    """``(c'_0, b'_1)`` of ``T^(k+1)``: ``alpha_{3k+1}`` and ``m_{k+1} alpha_{3k+1}``."""
    if k == 1:
        c0 = bands.c(0)
        return bands.c(1) - bands.b(1) / c0, bands.b(2) - bands.a(2) / c0
    f = gauss_borel(bands, k + 1)
    alpha = f.alpha_u[k]
    return alpha, f.m[k] * alpha


def tail_head_general(bands: BandSpec, k: int):
    """Same as the k >= 2 route of :func:`tail_matrix`, usable at ``k = 1`` for cross-checks."""
    f = gauss_borel(bands, k + 1)
    return f.alpha_u[k], f.m[k] * f.alpha_u[k]


def tail_matrix(bands: BandSpec, k: int, N: Optional[int] = None) -> BandSpec:
    """Bands of ``T^(k+1)``.

    ``c'_0 = alpha_{3k+1}``, ``b'_1 = m_{k+1} alpha_{3k+1}``, and every other
    entry is the source entry shifted by ``k``.  ``N`` is the output depth
    (default: as far as the source goes).

    >>> from tetrapbf.core import toeplitz_bands
    >>> t = tail_matrix(toeplitz_bands(6, 11, 6), 1)
    >>> t.c(0), t.b(1), t.c(1), t.a(2)
    (Fraction(25, 6), Fraction(10, 1), Fraction(6, 1), Fraction(6, 1))
    """
    if k < 1:
        raise OutOfRange(f"tail index must be >= 1, got {k}")
    length = _out_length(bands, N, k)
    if length is not None and length < 1:
        raise OutOfRange(f"source too short for tail {k}")
    head_c, head_b = _tail_head(bands, k)

    def c(n):
        return head_c if n == 0 else bands.c(n + k)

    def b(n):
        return head_b if n == 1 else bands.b(n + k)

    return BandSpec(c, b, lambda n: bands.a(n + k), length=length, name=f"tail({k})")


def check_matrix(bands: BandSpec, N: Optional[int] = None) -> BandSpec:
    """Bands of ``Ť``: ``c'_n = b_{n+1}``, ``b'_n = a_{n+1} c_n``, ``a'_n = a_n a_{n+1}``.

    ``N`` is the output depth, so the source must reach index ``N + 1``.
    """
    length = _out_length(bands, N, 1)
    return BandSpec(lambda n: bands.b(n + 1),
                    lambda n: bands.a(n + 1) * bands.c(n),
                    lambda n: bands.a(n) * bands.a(n + 1),
                    length=length, name="check")


def check_matrix_shifted(bands: BandSpec, k: int, N: Optional[int] = None) -> BandSpec:
    """``Ť^[k]``: the check matrix of the bands from index ``k`` on, with corner
    ``b_{k+1} - l_{k+1}``.

    This coincides with ``check_matrix(tail_matrix(bands, k))``.
    """
    if k < 1:
        raise OutOfRange(f"shift must be >= 1, got {k}")
    length = _out_length(bands, N, k + 1)
    f = gauss_borel(bands, k)
    l_next = bands.a(k + 1) / f.alpha_u[k - 1]      # l_{k+1} = a_{k+1} D(k-1)/D(k)
    corner = bands.b(k + 1) - l_next
    inner = check_matrix(bands.shift(k))

    def c(n):
        return corner if n == 0 else inner.c(n)

    return BandSpec(c, inner.b, inner.a, length=length, name=f"check_shifted({k})")


def check_factors(bands: BandSpec, N: int):
    """``(Ľ, J̌)`` with ``Ť^[N-1] = Ľ J̌`` (both ``N x N``).

    ``Ľ`` is lower bidiagonal with diagonal ``alpha_1, alpha_4, ..., alpha_{3N-2}``
    and subdiagonal ``a_2..a_N``; ``J̌`` has diagonal ``m_1..m_N``,
    superdiagonal ``l_{n+1}/a_{n+1}`` and subdiagonal ``a_{n+1}``.
    """
    if N < 1:
        raise OutOfRange("check factorization needs N >= 1")
    f = gauss_borel(bands, N)
    Lc = [[f.alpha_u[i] if i == j else bands.a(i + 1) if j == i - 1 else 0
           for j in range(N)] for i in range(N)]
    Jc = [[f.m[i] if i == j
           else f.l[i] / bands.a(i + 2) if j == i + 1
           else bands.a(i + 1) if j == i - 1 else 0
           for j in range(N)] for i in range(N)]
    return Lc, Jc


def check_factorization_holds(bands: BandSpec, N: int) -> bool:
    """Exact test of ``Ť^[N-1] = Ľ J̌``; the source must reach index ``N``."""
    Lc, Jc = check_factors(bands, N)
    target = materialize(Truncation(check_matrix(bands), N - 1, 0, PRINCIPAL))
    return matmul(Lc, Jc) == target


def as_finite(bands: BandSpec, N: int) -> BandSpec:
    """Materialize lazy bands through index ``N``."""
    return make_bands(*bands.arrays(N))
