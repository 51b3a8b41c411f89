"""Total nonnegativity and oscillation tests.

``all_minors_nonneg`` is the brute-force oracle: every minor of every
order, exact arithmetic.  The other routines are the cheap criteria for
the banded shapes this package deals with.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .core import (BandSpec, PRINCIPAL, Truncation, _integer_scaled, delta_ladder,
                   dense_determinant, exactify, is_exact, materialize, matmul)
from .contfrac import jacobi_delta_ladder
from .errors import DivisionByZero, SizeExceeded

DEFAULT_MINOR_LIMIT = 8


def minor_limit() -> int:
    """Brute-force size cap; ``PBF_MINOR_LIMIT`` overrides the default of 8."""
    value = os.environ.get("PBF_MINOR_LIMIT")
    return int(value) if value else DEFAULT_MINOR_LIMIT


@dataclass(frozen=True)
class TNVerdict:
    is_tn: Optional[bool]
    is_nonsingular: bool
    is_oscillatory: bool
    witness: Optional[tuple] = None          # (rows, cols), 0-based
    witness_value: Optional[Fraction] = None
    method: str = "minors"


def _minor_signs(rows, rtol):
    """Scan minors order by order; return (first negative (rows, cols, value) or None, det)."""
    n = len(rows)
    if n == 0:
        return None, Fraction(1)
    exact_input = all(is_exact(x) for r in rows for x in r)
    frac = [[Fraction(x) for x in r] for r in rows]
    ints, den = _integer_scaled(frac)
    scale = max((abs(x) for r in ints for x in r), default=0)

    def threshold(order):
        return 0 if exact_input else rtol * scale ** order

    cols_all = range(n)
    prev = {}
    for i in range(n):
        for j in range(n):
            v = ints[i][j]
            if v < -threshold(1):
                return ((i,), (j,), Fraction(v, den)), None
            prev[(1 << i, 1 << j)] = v
    for order in range(2, n + 1):
        cur = {}
        row_sets = list(combinations(range(n), order))
        col_sets = list(combinations(cols_all, order))
        for rs in row_sets:
            r0 = rs[0]
            rest = 0
            for r in rs[1:]:
                rest |= 1 << r
            top = ints[r0]
            for cs in col_sets:
                cmask = 0
                for c in cs:
                    cmask |= 1 << c
                total = 0
                for pos, c in enumerate(cs):
                    x = top[c]
                    if x:
                        sub = prev[(rest, cmask & ~(1 << c))]
                        if sub:
                            total += x * sub if pos % 2 == 0 else -x * sub
                if total < -threshold(order):
                    return (rs, cs, Fraction(total, den ** order)), None
                rmask = rest | (1 << r0)
                cur[(rmask, cmask)] = total
        prev = cur
    full = (1 << n) - 1
    det = prev[(full, full)] if n else 1
    return None, Fraction(det, den ** n)


def all_minors_nonneg(m, limit: Optional[int] = None, rtol: float = 1e-12) -> TNVerdict:
    """Enumerate all minors of a square matrix exactly.

    Float entries are converted to their exact binary values; a minor of
    order ``k`` then counts as negative only below ``-rtol * max|entry|**k``.
    The witness is the first negative minor in (order, rows, columns)
    lexicographic order.  Oscillation is decided with Gantmacher-Krein:
    TN, nonsingular, positive first sub- and superdiagonal.

    >>> all_minors_nonneg([[1, 1], [5, 1]]).witness
    ((0, 1), (0, 1))
    """
    n = len(m)
    if limit is None:
        limit = minor_limit()
    if n > limit:
        raise SizeExceeded(f"{n}x{n} exceeds the brute-force limit {limit}")
    negative, det = _minor_signs(m, rtol)
    if negative is not None:
        rows, cols, value = negative
        nonsingular = dense_determinant(m) != 0
        return TNVerdict(False, nonsingular, False, (rows, cols), value)
    nonsingular = det != 0
    band_ok = all(m[i + 1][i] > 0 and m[i][i + 1] > 0 for i in range(n - 1))
    return TNVerdict(True, nonsingular, nonsingular and band_ok)


def _factorization_criterion(bands: BandSpec, N: int) -> bool:
    """Oscillation of ``T^[N]`` from its factors.

    ``T^[N]`` is oscillatory iff every ``D(n) > 0`` (n = 1..N+1) and every
    ``Delta_{n,1} > 0`` (n = 1..N): then alpha_2 = 0 gives a bidiagonal
    factorization with nonnegative entries and positive diagonals.
    """
    D = delta_ladder(bands, N + 1)
    if any(D[n] <= 0 for n in range(1, N + 2)):
        return False
    if N == 0:
        return True
    ratio = [D[n + 1] / D[n] for n in range(N + 1)]
    m = [bands.c(n) - ratio[n] for n in range(1, N + 1)]
    l = [bands.a(n + 1) * D[n - 1] / D[n] for n in range(1, N)]
    return all(x > 0 for x in jacobi_delta_ladder(l, m, 1, N).values[1:])


def is_oscillatory_hessenberg(bands: BandSpec, N: int, method: str = "minors",
                              limit: Optional[int] = None) -> TNVerdict:
    """Classify ``T^[N]``.

    ``method="minors"`` runs the exact brute force (``SizeExceeded`` past
    the limit); ``"factorization"`` uses the determinant criterion, any
    size; ``"auto"`` picks brute force when it fits.
    """
    if limit is None:
        limit = minor_limit()
    if method == "auto":
        method = "minors" if N + 1 <= limit else "factorization"
    subdiag_ok = all(bands.b(n) > 0 for n in range(1, N + 1))
    if method == "minors":
        verdict = all_minors_nonneg(materialize(Truncation(bands, N, 0, PRINCIPAL)), limit)
        osc = bool(verdict.is_tn and verdict.is_nonsingular and subdiag_ok)
        return TNVerdict(verdict.is_tn, verdict.is_nonsingular, osc,
                         verdict.witness, verdict.witness_value, "minors")
    if method == "factorization":
        nonsingular = delta_ladder(bands, N + 1)[N + 1] != 0
        osc = subdiag_ok and _factorization_criterion(bands, N)
        return TNVerdict(True if osc else None, nonsingular, osc, method="factorization")
    raise ValueError(f"unknown method {method!r}")


# -- Jacobi matrices ----------------------------------------------------------
# (l, m) use the offsets m[0] = m_1, l[0] = l_2.


def _size(m, N):
    return len(m) if N is None else N


def jacobi_minors(l, m, N: Optional[int] = None, shift=0):
    """Leading principal minors ``Delta_{1,1}..Delta_{N,1}`` of ``J + shift I``."""
    n = _size(m, N)
    ms = [x + shift for x in m[:n]] if shift else list(m[:n])
    return list(jacobi_delta_ladder(l, ms, 1, n).values[1:])


def is_jacobi_oscillatory(l, m, N: Optional[int] = None) -> bool:
    """All ``l_n > 0`` and all leading principal minors positive.

    ``N`` is the number of rows used (default: all of ``m``).
    """
    n = _size(m, N)
    if any(x <= 0 for x in l[:max(n - 1, 0)]):
        return False
    return all(d > 0 for d in jacobi_minors(l, m, n))


def jacobi_shift_bound(l, m, N: Optional[int] = None, tol=1e-10):
    """Smallest ``s >= 0`` (to ``tol``) making every leading minor of ``J + sI`` positive.

    Bisection; the returned value is the upper end of the final bracket,
    so ``J + sI`` is oscillatory at the returned ``s``.
    """
    n = _size(m, N)
    ok = lambda s: all(d > 0 for d in jacobi_minors(l, m, n, s))
    if ok(0):
        return 0
    lo = 0
    hi = max(0, -min(m[:n])) + 1 + max(l[:max(n - 1, 0)], default=0) + 1
    while not ok(hi):
        hi *= 2
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return hi


def jacobi_pbf(l, m, N: Optional[int] = None) -> tuple:
    """Bidiagonal coefficients ``beta_1..beta_{2N-1}`` of ``J^[N,1] = L U``.

    ``beta_1 = m_1``, ``beta_{2n-2} = l_n / beta_{2n-3}``,
    ``beta_{2n-1} = m_n - beta_{2n-2}``.  ``L`` carries the even betas on
    its subdiagonal, ``U`` the odd ones on its diagonal.
    """
    n = _size(m, N)
    l, m = [exactify(x) for x in l], [exactify(x) for x in m]
    beta = [m[0]]
    for k in range(2, n + 1):
        if beta[-1] == 0:
            raise DivisionByZero(f"beta_{2 * k - 3} = 0")
        even = l[k - 2] / beta[-1]
        beta += [even, m[k - 1] - even]
    return tuple(beta)


def jacobi_from_pbf(beta):
    """Dense ``L U`` from a beta sequence (inverse of :func:`jacobi_pbf`)."""
    n = (len(beta) + 1) // 2
    L = [[1 if i == j else beta[2 * i - 1] if j == i - 1 else 0 for j in range(n)] for i in range(n)]
    U = [[beta[2 * i] if i == j else 1 if j == i + 1 else 0 for j in range(n)] for i in range(n)]
    return matmul(L, U)


def jacobi_matrix(l, m, N: Optional[int] = None):
    n = _size(m, N)
    return [[m[i] if i == j else 1 if j == i + 1 else l[i - 1] if j == i - 1 else 0
             for j in range(n)] for i in range(n)]
