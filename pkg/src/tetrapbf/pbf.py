"""Positive bidiagonal factorization ``T^[N] = L_1 L_2 U``.

``L_1`` has ``alpha_2, alpha_5, ..., alpha_{3N-1}`` on its subdiagonal,
``L_2`` has ``alpha_3, alpha_6, ..., alpha_{3N}``, and ``U`` is the upper
Gauss-Borel factor (diagonal ``alpha_1, alpha_4, ..., alpha_{3N+1}``,
unit superdiagonal).  The free parameter is ``alpha_2``; entries are
positive exactly when ``0 < alpha_2 < K[N+1, 1]`` (and nonnegative at
``alpha_2 = 0``).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Optional

from .contfrac import finite_cf
from .core import (BandSpec, PRINCIPAL, Truncation, exactify, make_bands, materialize,
                   matmul)
from .errors import GateViolation, NonPositiveA, OutOfRange, ZeroPivot
from .gauss_borel import gauss_borel


@dataclass(frozen=True)
class BidiagonalFactorization:
    alphas: tuple     # alpha_1 .. alpha_{3N+1}
    alpha2: object
    N: int
    all_positive: bool
    gate: Optional[object] = None   # K[N+1, 1], None when N = 0

    def alpha(self, j: int):
        """``alpha_j`` with the convention ``alpha_j = 0`` for ``j <= 0``."""
        if j <= 0:
            return 0
        if j == 2:
            return self.alpha2
        if j > 3 * self.N + 1:
            raise OutOfRange(f"alpha_{j} beyond depth {self.N}")
        return self.alphas[j - 1]

    def factors(self):
        """Dense ``(L_1, L_2, U)``."""
        size = self.N + 1

        def lower(offset):
            return [[1 if i == j else self.alpha(3 * i - offset) if j == i - 1 else 0
                     for j in range(size)] for i in range(size)]

        U = [[self.alpha(3 * i + 1) if i == j else 1 if j == i + 1 else 0
              for j in range(size)] for i in range(size)]
        return lower(1), lower(0), U

    def product(self):
        L1, L2, U = self.factors()
        return matmul(matmul(L1, L2), U)


def lower_bidiagonal_split(l, m, alpha2, N: int) -> tuple:
    """Split ``L^[N] = L_1 L_2`` given ``alpha_2``.

    Returns ``(alpha_2, alpha_3, alpha_5, alpha_6, ..., alpha_{3N-1}, alpha_{3N})``
    from ``alpha_3 = m_1 - alpha_2``, ``alpha_{3n-1} = l_n / alpha_{3n-3}``,
    ``alpha_{3n} = m_n - alpha_{3n-1}``.  ``l`` and ``m`` use the offsets
    ``l[0] = l_2``, ``m[0] = m_1``.
    """
    alpha2 = exactify(alpha2)
    if N == 0:
        return (alpha2,)
    out = [alpha2, m[0] - alpha2]
    for n in range(2, N + 1):
        prev = out[-1]
        if prev == 0:
            raise ZeroPivot(n - 1)
        a_low = l[n - 2] / prev
        out += [a_low, m[n - 1] - a_low]
    return tuple(out)


def pbf_factorize(bands: BandSpec, alpha2=None, N: Optional[int] = None) -> BidiagonalFactorization:
    """Bidiagonal factorization of ``T^[N]`` for the given ``alpha_2``.

    ``alpha2`` defaults to ``K[N+1,1] / 2``.  A :class:`GateViolation`
    warning is issued when ``alpha2 >= K[N+1,1]``; the factorization is
    still returned if it exists.
    """
    if N is None:
        if bands.length is None:
            raise OutOfRange("semi-infinite bands need an explicit depth N")
        N = bands.length
    f = gauss_borel(bands, N)
    gate = finite_cf(f.l, f.m, N + 1, 1) if N >= 1 else None
    if alpha2 is None:
        alpha2 = gate / 2 if gate is not None else 0
    elif gate is not None and alpha2 >= gate:
        warnings.warn(f"alpha_2 = {alpha2} >= K[{N + 1},1] = {gate}; positivity not guaranteed",
                      GateViolation, stacklevel=2)
    split = lower_bidiagonal_split(f.l, f.m, alpha2, N)
    alphas = [f.alpha_u[0]]
    for n in range(1, N + 1):
        alphas += [split[2 * n - 2], split[2 * n - 1], f.alpha_u[n]]
    positive = all(x > 0 for x in alphas)
    return BidiagonalFactorization(tuple(alphas), alpha2, N, positive, gate)


def reconstruct_bands(alphas, N: Optional[int] = None) -> BandSpec:
    """Bands of ``L_1 L_2 U`` from ``alpha_1 .. alpha_{3N+1}``::

        c_n = alpha_{3n+1} + alpha_{3n} + alpha_{3n-1}
        b_n = alpha_{3n} alpha_{3n-2} + alpha_{3n-1} alpha_{3n-2} + alpha_{3n-1} alpha_{3n-3}
        a_n = alpha_{3n-1} alpha_{3n-3} alpha_{3n-5}
    """
    alphas = tuple(alphas)
    if N is None:
        N = (len(alphas) - 1) // 3
    if len(alphas) < 3 * N + 1:
        raise OutOfRange(f"depth {N} needs {3 * N + 1} alphas, got {len(alphas)}")

    def al(j):
        return alphas[j - 1] if j >= 1 else 0

    c = [al(3 * n + 1) + al(3 * n) + al(3 * n - 1) for n in range(N + 1)]
    b = [al(3 * n) * al(3 * n - 2) + al(3 * n - 1) * al(3 * n - 2) + al(3 * n - 1) * al(3 * n - 3)
         for n in range(1, N + 1)]
    a = [al(3 * n - 1) * al(3 * n - 3) * al(3 * n - 5) for n in range(2, N + 1)]
    for n, value in enumerate(a, start=2):
        if not value > 0:
            raise NonPositiveA(n, value)
    return make_bands(c, b, a)


def check_product(fac: BidiagonalFactorization, bands: BandSpec, rtol: float = 1e-12) -> bool:
    """``L_1 L_2 U == T^[N]`` entrywise (exact, or to ``rtol`` with floats)."""
    target = materialize(Truncation(bands, fac.N, 0, PRINCIPAL))
    for prow, trow in zip(fac.product(), target):
        for p, t in zip(prow, trow):
            if isinstance(p, float) or isinstance(t, float):
                if abs(p - t) > rtol * max(abs(p), abs(t), 1.0):
                    return False
            elif p != t:
                return False
    return True
