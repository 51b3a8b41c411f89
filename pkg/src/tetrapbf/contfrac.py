"""Finite continued fractions K[n,k], Jacobi determinants and limit estimates.

Jacobi data ``(l, m)`` follows the package-wide offsets: ``m[0]`` is
``m_1`` and ``l[0]`` is ``l_2``.  Indices ``k`` and ``n`` are the
mathematical ones.

Depth convention: ``K[n,k]`` nests ``m_k, ..., m_{n-1}``::

    K[k+1, k] = m_k
    K[n, k]   = m_k - l_{k+1} / (m_{k+1} - ... - l_{n-1} / m_{n-1})
              = Delta_{n-1,k} / Delta_{n-1,k+1}

so ``K[N+1, 1]`` is the positivity gate of the depth-``N`` factorization.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional

from .core import BandSpec, DeterminantLadder, exactify, is_exact
from .errors import OutOfRange, ZeroDenominator
from .gauss_borel import gauss_borel


def _m(m, n):
    if not 1 <= n <= len(m):
        raise OutOfRange(f"m_{n} not available (have m_1..m_{len(m)})")
    return exactify(m[n - 1])


def _l(l, n):
    if n <= 1:
        return 0
    if n - 2 >= len(l):
        raise OutOfRange(f"l_{n} not available (have l_2..l_{len(l) + 1})")
    return exactify(l[n - 2])


def jacobi_delta_ladder(l, m, k: int = 1, maxN: Optional[int] = None,
                        shifted: bool = False) -> DeterminantLadder:
    """Run ``D(n+1) = m_{k+n} D(n) - l_{k+n} D(n-1)``.

    With ``D(0) = 1, D(1) = m_k`` the result is ``D(n) = Delta_{k+n-1,k}``;
    with ``shifted=True`` (``D(0) = 0, D(1) = 1``) it is ``Delta_{k+n-1,k+1}``.
    ``maxN`` defaults to the last ``n`` the data supports.
    """
    if maxN is None:
        maxN = len(m) - k + 1
    if maxN <= 0:
        return DeterminantLadder((0,) if shifted else (1,), "Delta")
    d = [0, 1] if shifted else [1, _m(m, k)]
    for n in range(1, maxN):
        d.append(_m(m, k + n) * d[n] - _l(l, k + n) * d[n - 1])
    return DeterminantLadder(tuple(d[:maxN + 1]), "Delta")


def jacobi_determinant(l, m, N: int, k: int = 1):
    """``Delta_{N,k} = det J^[N,k]``; 1 when ``k = N + 1``."""
    if k == N + 1:
        return 1
    return jacobi_delta_ladder(l, m, k, N - k + 1)[N - k + 1]


def _euler_wallis(l, m, k, steps):
    """Numerator/denominator pairs after 1..steps levels, rescaled in float mode."""
    p_prev, p = 1, _m(m, k)
    q_prev, q = 0, 1
    out = [(p, q)]
    exact = is_exact(p)
    for n in range(1, steps):
        mk, lk = _m(m, k + n), _l(l, k + n)
        p_prev, p = p, mk * p - lk * p_prev
        q_prev, q = q, mk * q - lk * q_prev
        if not exact:
            scale = max(abs(p), abs(q))
            if scale > 1e150 or 0 < scale < 1e-150:
                p, p_prev, q, q_prev = p / scale, p_prev / scale, q / scale, q_prev / scale
        out.append((p, q))
    return out


def finite_cf(l, m, n: int, k: int = 1):
    """``K[n,k]`` as the ratio of the two Euler-Wallis ladders.

    >>> from fractions import Fraction as F
    >>> finite_cf([1, F(36, 25)], [F(11, 6), F(12, 5), F(239, 90)], 3)
    Fraction(17, 12)
    """
    if n <= k:
        raise OutOfRange(f"K[n,k] needs n > k, got n={n}, k={k}")
    p, q = _euler_wallis(l, m, k, n - k)[-1]
    if q == 0:
        raise ZeroDenominator(f"Delta_{{{n - 1},{k + 1}}} = 0")
    return p / q


def nested_cf(l, m, n: int, k: int = 1):
    """``K[n,k]`` evaluated bottom-up from its nested definition."""
    if n <= k:
        raise OutOfRange(f"K[n,k] needs n > k, got n={n}, k={k}")
    v = _m(m, n - 1)
    for j in range(n - 2, k - 1, -1):
        if v == 0:
            raise ZeroDenominator(f"zero partial denominator below m_{j}")
        v = _m(m, j) - _l(l, j + 1) / v
    return v


def convergents(l, m, k: int = 1, maxN: Optional[int] = None) -> list:
    """``[K[k+1,k], K[k+2,k], ..., K[maxN,k]]``."""
    if maxN is None:
        maxN = len(m) + 1
    out = []
    for p, q in _euler_wallis(l, m, k, maxN - k):
        if q == 0:
            raise ZeroDenominator("vanishing Jacobi determinant in the denominator")
        out.append(p / q)
    return out


class CFStatus(str, enum.Enum):
    CONVERGED = "converged"
    POSITIVE_BOUNDED = "positive_bounded"
    INDETERMINATE_NEAR_ZERO = "indeterminate_near_zero"


@dataclass(frozen=True)
class CFEvaluation:
    """Convergents ``K[k+1,k], K[k+2,k], ...`` of one continued fraction.

    ``limit_estimate`` is the last convergent, an upper bound for the limit
    when the sequence decreases.  ``aitken`` is an extrapolated value kept
    only as a diagnostic.
    """

    k: int
    convergents: tuple
    monotone_ok: bool
    limit_estimate: object
    gap: object
    status: CFStatus
    aitken: Optional[float] = field(default=None, compare=False)

    @property
    def depths(self):
        return range(self.k + 1, self.k + 1 + len(self.convergents))


def _aitken(xs):
    if len(xs) < 3:
        return None
    x0, x1, x2 = (float(v) for v in xs[-3:])
    denom = x2 - 2 * x1 + x0
    if denom == 0 or not math.isfinite(denom):
        return x2
    return x2 - (x2 - x1) ** 2 / denom


def evaluate_convergents(l, m, k: int, tol, maxN: int, zero_margin: int = 100) -> CFEvaluation:
    """Walk ``K[n,k]`` for ``n = k+1..maxN`` until the successive gap drops below ``tol``.

    The limit of a decreasing positive sequence lies in ``[0, K[n,k]]``.
    When the last convergent is below ``tol`` or within ``zero_margin``
    gaps of zero, a zero limit cannot be excluded and the status is
    ``INDETERMINATE_NEAR_ZERO``.  No attempt is made to decide it.
    """
    values = []
    gap = None
    status = CFStatus.POSITIVE_BOUNDED
    for p, q in _euler_wallis(l, m, k, maxN - k):
        if q == 0:
            raise ZeroDenominator("vanishing Jacobi determinant in the denominator")
        values.append(p / q)
        if len(values) >= 2:
            gap = values[-2] - values[-1]
            if values[-1] < tol or (abs(gap) < tol):
                break
    monotone = all(x > y for x, y in zip(values, values[1:]))
    last = values[-1]
    if gap is not None and abs(gap) < tol:
        status = CFStatus.CONVERGED
    if last < tol or (gap is not None and last <= zero_margin * abs(gap)):
        status = CFStatus.INDETERMINATE_NEAR_ZERO
    return CFEvaluation(k=k, convergents=tuple(values), monotone_ok=monotone,
                        limit_estimate=last, gap=gap if gap is not None else 0,
                        status=status, aitken=_aitken(values))


def tail_cf_estimate(bands: BandSpec, k: int, tol=1e-9, maxN: int = 200,
                     zero_margin: int = 100) -> CFEvaluation:
    """Convergents ``K[n,k+1]`` of the ``(k+1)``-th tail, ``n = k+2..maxN``.

    ``k = 0`` is the continued fraction ``K[1]`` itself.
    """
    if bands.length is not None:
        maxN = min(maxN, bands.length + 1)
    if maxN < k + 2:
        raise OutOfRange(f"depth {maxN} too small for tail index {k}")
    f = gauss_borel(bands, maxN - 1)
    return evaluate_convergents(f.l, f.m, k + 1, tol, maxN, zero_margin)


def infinite_cf_estimate(bands: BandSpec, tol=1e-9, maxN: int = 200,
                         zero_margin: int = 100) -> CFEvaluation:
    """Estimate ``K[1]`` from the convergents ``K[N,1]``, ``N = 2..maxN``."""
    return tail_cf_estimate(bands, 0, tol, maxN, zero_margin)
