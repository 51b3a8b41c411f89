"""Gauss-Borel (LU) factorization of the truncations T^[N].

``T^[N] = L U`` with ``L`` unit lower triangular carrying ``m_n`` on the
first and ``l_n`` on the second subdiagonal, and ``U`` upper bidiagonal with
diagonal ``alpha_1, alpha_4, ..., alpha_{3N+1}`` and unit superdiagonal.
In size-indexed ladder terms::

    alpha_{3n+1} = D(n+1) / D(n)
    m_n          = c_n - D(n+1) / D(n)
    l_{n+1}      = a_{n+1} D(n-1) / D(n)
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .core import (BandSpec, PRINCIPAL, Truncation, delta_ladder, materialize,
                   matmul)
from .errors import OutOfRange, SingularMinor


class JacobiData(NamedTuple):
    """Coefficients of ``J^[N,start]``: ``m[0] = m_start``, ``l[0] = l_{start+1}``."""

    l: tuple
    m: tuple
    start: int = 1


@dataclass(frozen=True)
class GaussBorelFactors:
    m: tuple          # m_1 .. m_N
    l: tuple          # l_2 .. l_N
    alpha_u: tuple    # alpha_1, alpha_4, .., alpha_{3N+1}
    bands: BandSpec
    N: int

    def mm(self, n: int):
        if not 1 <= n <= self.N:
            raise OutOfRange(f"m_{n} outside 1..{self.N}")
        return self.m[n - 1]

    def ll(self, n: int):
        if n == 1:
            return 0
        if not 2 <= n <= self.N:
            raise OutOfRange(f"l_{n} outside 2..{self.N}")
        return self.l[n - 2]

    def alpha(self, j: int):
        """``alpha_j`` for ``j = 3n + 1``."""
        if (j - 1) % 3 or not 0 <= (j - 1) // 3 <= self.N:
            raise OutOfRange(f"alpha_{j} is not an upper-factor entry at depth {self.N}")
        return self.alpha_u[(j - 1) // 3]

    def lower(self):
        size = self.N + 1
        return [[1 if j == i else self.mm(i) if j == i - 1 else self.ll(i) if j == i - 2 and i >= 2 else 0
                 for j in range(size)] for i in range(size)]

    def upper(self):
        size = self.N + 1
        return [[self.alpha_u[i] if j == i else 1 if j == i + 1 else 0
                 for j in range(size)] for i in range(size)]

    @property
    def jacobi(self) -> JacobiData:
        return JacobiData(self.l, self.m, 1)

    def all_positive(self) -> bool:
        return all(x > 0 for x in self.m + self.l + self.alpha_u)


def _ratio_ladder(bands: BandSpec, N: int):
    """``r_n = D(n+1)/D(n)`` for n = 0..N without forming D (float overflow guard)."""
    r = []
    for n in range(N + 1):
        value = bands.c(n)
        if n >= 1:
            value -= bands.b(n) / r[n - 1]
        if n >= 2:
            value += bands.a(n) / (r[n - 1] * r[n - 2])
        if value == 0:
            raise SingularMinor(n + 1)
        r.append(value)
    return r


def gauss_borel(bands: BandSpec, N: int) -> GaussBorelFactors:
    """Factor ``T^[N] = L U``.

    Raises :class:`SingularMinor` when some ``D(n)``, ``1 <= n <= N + 1``,
    vanishes.

    >>> from tetrapbf.core import toeplitz_bands
    >>> f = gauss_borel(toeplitz_bands(6, 11, 6), 2)
    >>> [str(x) for x in f.m], [str(x) for x in f.alpha_u]
    (['11/6', '12/5'], ['6', '25/6', '18/5'])
    """
    if bands.exact:
        D = delta_ladder(bands, N + 1)
        for n in range(1, N + 2):
            if D[n] == 0:
                raise SingularMinor(n)
        ratio = [D[n + 1] / D[n] for n in range(N + 1)]
        # l_{n+1} = a_{n+1} D(n-1)/D(n)
        l = tuple(bands.a(n + 1) * D[n - 1] / D[n] for n in range(1, N))
    else:
        ratio = _ratio_ladder(bands, N)
        l = tuple(bands.a(n + 1) / ratio[n - 1] for n in range(1, N))
    m = tuple(bands.c(n) - ratio[n] for n in range(1, N + 1))
    return GaussBorelFactors(m=m, l=l, alpha_u=tuple(ratio), bands=bands, N=N)


def verify_factorization(f: GaussBorelFactors, rtol: float = 1e-12) -> bool:
    """Check ``L U == T^[N]``: exactly, or to ``rtol`` relative when floats are involved."""
    product = matmul(f.lower(), f.upper())
    target = materialize(Truncation(f.bands, f.N, 0, PRINCIPAL))
    for prow, trow in zip(product, target):
        for p, t in zip(prow, trow):
            if isinstance(p, float) or isinstance(t, float):
                if abs(p - t) > rtol * max(abs(p), abs(t), 1.0):
                    return False
            elif p != t:
                return False
    return True


def auxiliary_jacobi(f: GaussBorelFactors, k: int) -> JacobiData:
    """Data of ``J^[N,k+1]``: diagonal ``m_{k+1}..m_N``, subdiagonal ``l_{k+2}..l_N``."""
    if not 0 <= k <= f.N - 1:
        raise OutOfRange(f"need 0 <= k <= N - 1 = {f.N - 1}, got {k}")
    return JacobiData(f.l[k:], f.m[k:], k + 1)
