"""Constant-band (Toeplitz) tetradiagonal matrices.

The bands ``a, b, c`` are the elementary symmetric functions of a root
triple ``beta_1 >= beta_2 >= beta_3``::

    a = beta_1 beta_2 beta_3,  b = beta_1 beta_2 + beta_1 beta_3 + beta_2 beta_3,
    c = beta_1 + beta_2 + beta_3

i.e. ``1 + c t + b t^2 + a t^3 = (1 + beta_1 t)(1 + beta_2 t)(1 + beta_3 t)``,
and the matrix is oscillatory exactly when the three roots of
``p(x) = x^3 - c x^2 + b x - a`` are real and positive.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .core import BandSpec, exactify, is_exact, toeplitz_bands
from .errors import MissingBetas, NonPositiveA

FLOAT_MERGE_RTOL = 1e-9
DISC_RTOL = 1e-12
ISOLATION_WIDTH = Fraction(1, 2 ** 120)


class Multiplicity(str, enum.Enum):
    DISTINCT = "distinct"
    DOUBLE_LOW = "double_low"     # beta_2 = beta_3
    DOUBLE_HIGH = "double_high"   # beta_1 = beta_2
    TRIPLE = "triple"


def _multiplicity(b1, b2, b3) -> Multiplicity:
    if b1 == b2 == b3:
        return Multiplicity.TRIPLE
    if b1 == b2:
        return Multiplicity.DOUBLE_HIGH
    if b2 == b3:
        return Multiplicity.DOUBLE_LOW
    return Multiplicity.DISTINCT


@dataclass(frozen=True)
class ToeplitzParams:
    """Toeplitz bands with, when they exist, their real positive roots.

    ``betas_exact`` is False when the roots are irrational and ``betas``
    holds isolating approximations (width below ``2**-120``) or floats.
    """

    a: object
    b: object
    c: object
    betas: Optional[tuple] = None
    multiplicity: Optional[Multiplicity] = None
    betas_exact: bool = True

    def __post_init__(self):
        if not self.a > 0:
            raise NonPositiveA(2, self.a)

    @classmethod
    def from_betas(cls, b1, b2, b3) -> "ToeplitzParams":
        """
        >>> p = ToeplitzParams.from_betas(1, 2, 3)
        >>> (p.a, p.b, p.c, p.betas)
        (6, 11, 6, (3, 2, 1))
        """
        b1, b2, b3 = sorted((b1, b2, b3), reverse=True)
        if not b3 > 0:
            raise ValueError(f"roots must be positive, got {(b1, b2, b3)}")
        return cls(a=b1 * b2 * b3, b=b1 * b2 + b1 * b3 + b2 * b3, c=b1 + b2 + b3,
                   betas=(b1, b2, b3), multiplicity=_multiplicity(b1, b2, b3),
                   betas_exact=all(is_exact(x) for x in (b1, b2, b3)))

    @property
    def harmonic_mean_certified(self) -> bool:
        """The harmonic-mean value of ``K[1]`` is only proved for distinct roots."""
        return self.multiplicity == Multiplicity.DISTINCT

    def bands(self, size: Optional[int] = None) -> BandSpec:
        return toeplitz_bands(self.a, self.b, self.c, size)

    def _need_betas(self):
        if self.betas is None:
            raise MissingBetas(f"Toeplitz({self.a}, {self.b}, {self.c}) has no real positive root triple")
        return self.betas


def discriminant(a, b, c):
    """Discriminant of ``x^3 - c x^2 + b x - a``.

    >>> discriminant(6, 11, 6), discriminant(1, 5, 1)
    (4, -416)
    """
    return 18 * a * b * c - 4 * a * c ** 3 + b * b * c * c - 4 * b ** 3 - 27 * a * a


def _cubic(a, b, c, x):
    return ((x - c) * x + b) * x - a


def _float_roots(a, b, c):
    """Real roots (ascending) by the trigonometric formula; None if only one is real."""
    a, b, c = float(a), float(b), float(c)
    shift = c / 3
    p = b - c * c / 3
    q = -2 * c ** 3 / 27 + b * c / 3 - a
    scale = max(abs(a), abs(b), abs(c), 1.0)
    if abs(p) <= 1e-14 * scale ** (2 / 3) * max(c * c, 1.0):
        if abs(q) <= 1e-12 * scale:
            return [shift] * 3
        return None
    if p > 0:
        return None
    arg = 3 * q / (2 * p) * math.sqrt(-3 / p)
    if abs(arg) > 1 + 1e-9:
        return None
    arg = max(-1.0, min(1.0, arg))
    rad = 2 * math.sqrt(-p / 3)
    theta = math.acos(arg) / 3
    return sorted(shift + rad * math.cos(theta - 2 * math.pi * j / 3) for j in range(3))


def _merge(roots, rtol):
    r = sorted(roots, reverse=True)
    for i in range(2):
        if abs(r[i] - r[i + 1]) <= rtol * max(abs(r[i]), abs(r[i + 1])):
            mean = (r[i] + r[i + 1]) / 2
            r[i] = r[i + 1] = mean
    if r[0] == r[1] or r[1] == r[2]:
        if abs(r[0] - r[2]) <= rtol * r[0]:
            r = [sum(r) / 3] * 3
    return tuple(r)


def _rational_root(a, b, c, guess):
    """Exact rational root near ``guess`` if there is one."""
    for den in (10 ** 6, 10 ** 12):
        cand = Fraction(guess).limit_denominator(den)
        if _cubic(a, b, c, cand) == 0:
            return cand
    return None


def _isolate(a, b, c, lo, hi):
    """Bisect a sign change of the cubic on ``[lo, hi]`` with exact arithmetic."""
    flo = _cubic(a, b, c, lo)
    if flo == 0:
        return lo
    while hi - lo > ISOLATION_WIDTH:
        mid = (lo + hi) / 2
        fm = _cubic(a, b, c, mid)
        if fm == 0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return (lo + hi) / 2


def _exact_distinct_roots(a, b, c):
    """Three simple real roots, descending; exact when rational."""
    approx = _float_roots(a, b, c) or []
    found = [_rational_root(a, b, c, x) for x in approx]
    if any(r is not None for r in found):
        r = next(x for x in found if x is not None)
        # deflate: x^2 - (c - r) x + a / r
        s, prod = c - r, a / r
        qd = s * s - 4 * prod
        if qd < 0:
            raise ArithmeticError("positive discriminant with a complex pair")
        sq = Fraction(math.isqrt(qd.numerator), math.isqrt(qd.denominator))
        exact = sq * sq == qd
        if not exact:
            sq = _sqrt_floor(qd, ISOLATION_WIDTH.denominator.bit_length())
        roots = (r, (s + sq) / 2, (s - sq) / 2)
        return tuple(sorted(roots, reverse=True)), exact
    # irrational: the critical points of p separate the roots
    lo_bound, hi_bound = Fraction(0), max(c, Fraction(1)) + 1
    bits = 64
    while True:
        root_d = _sqrt_floor(c * c - 3 * b, bits)      # p'(x) = 3x^2 - 2cx + b
        edges = [lo_bound, (c - root_d) / 3, (c + root_d) / 3, hi_bound]
        signs = [_cubic(a, b, c, x) > 0 for x in edges]
        if all(s != t for s, t in zip(signs, signs[1:])):
            break
        bits *= 2
    roots = [_isolate(a, b, c, lo, hi) for lo, hi in zip(edges, edges[1:])]
    return tuple(sorted(roots, reverse=True)), False


def _sqrt_floor(x: Fraction, bits: int) -> Fraction:
    """``sqrt(x)`` rounded down to a multiple of ``2**-bits``."""
    scaled = x * 4 ** bits
    return Fraction(math.isqrt(scaled.numerator // scaled.denominator), 2 ** bits)


def betas_from_abc(a, b, c) -> Optional[ToeplitzParams]:
    """Root triple of ``x^3 - c x^2 + b x - a`` when all roots are real (hence positive).

    Exact inputs are classified by the sign of the discriminant;
    repeated roots are then rational and found in closed form.  Float
    inputs go through the trigonometric formula and merge roots within
    a relative ``1e-9``.

    >>> betas_from_abc(6, 11, 6).betas
    (3, 2, 1)
    >>> betas_from_abc(1, 5, 1) is None
    True
    """
    if not a > 0:
        raise NonPositiveA(2, a)
    if b < 0 or c < 0:
        raise ValueError("betas_from_abc needs b >= 0 and c >= 0")
    if not all(is_exact(x) for x in (a, b, c)):
        a, b, c = float(a), float(b), float(c)
        terms = (18 * a * b * c, 4 * a * c ** 3, b * b * c * c, 4 * b ** 3, 27 * a * a)
        disc = discriminant(a, b, c)
        if abs(disc) <= DISC_RTOL * max(terms):
            # a double root is only resolved to ~sqrt(eps) by the trig formula
            betas = _confluent(a, b, c, DISC_RTOL)
        else:
            roots = _float_roots(a, b, c)
            if roots is None or disc < 0:
                return None
            betas = _merge(roots, FLOAT_MERGE_RTOL)
        if not betas[2] > 0:
            return None
        return ToeplitzParams(a, b, c, betas, _multiplicity(*betas), betas_exact=False)

    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    disc = discriminant(a, b, c)
    if disc < 0:
        return None
    # with a > 0 and b, c >= 0 the cubic is negative on (-inf, 0], so real roots are positive
    if disc == 0:
        betas, exact = _confluent(a, b, c, 0), True
    else:
        betas, exact = _exact_distinct_roots(a, b, c)
    betas = tuple(_normalize(x) for x in betas)
    return ToeplitzParams(_normalize(a), _normalize(b), _normalize(c), betas,
                          _multiplicity(*betas), betas_exact=exact)


def _confluent(a, b, c, rtol):
    """Roots when the discriminant vanishes: a double root ``r`` and ``s = c - 2r``."""
    gap = 3 * b - c * c
    if abs(gap) <= rtol * c * c or gap == 0:
        r = c / 3
        return (r, r, r)
    r = (9 * a - b * c) / (2 * gap)
    s = c - 2 * r
    return tuple(sorted((r, r, s), reverse=True))


def _normalize(x):
    return int(x) if isinstance(x, Fraction) and x.denominator == 1 else x


def _solve3(rows, rhs):
    """Gaussian elimination for a 3x3 system (exact or float)."""
    m = [list(r) + [v] for r, v in zip(rows, rhs)]
    n = 3
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(m[r][col]))
        m[col], m[piv] = m[piv], m[col]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col] / m[col][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[i][n] / m[i][i] for i in range(n)]


def _basis(p: ToeplitzParams):
    b1, b2, b3 = (exactify(x) for x in p.betas)
    kind = p.multiplicity
    if kind == Multiplicity.DOUBLE_LOW:
        return [lambda n: _pow(b1, n), lambda n: _pow(b2, n), lambda n: n * _pow(b2, n)]
    if kind == Multiplicity.DOUBLE_HIGH:
        return [lambda n: _pow(b1, n), lambda n: n * _pow(b1, n), lambda n: _pow(b3, n)]
    return [lambda n: _pow(b1, n), lambda n: n * _pow(b1, n), lambda n: n * n * _pow(b1, n)]


def _pow(x, n):
    if n < 0 and is_exact(x):
        return Fraction(1) / Fraction(x) ** (-n)
    return x ** n


def toeplitz_determinant(p: ToeplitzParams, n: int):
    """``D(n)``, the determinant of the ``n x n`` leading block, in closed form.

    Distinct roots use ``sum_i beta_i^(n+2) / prod_{j != i} (beta_i - beta_j)``;
    repeated roots solve ``D(0) = 1, D(-1) = D(-2) = 0`` in the confluent basis.

    >>> p = ToeplitzParams.from_betas(3, 2, 1)
    >>> [toeplitz_determinant(p, n) for n in range(5)]
    [1, 6, 25, 90, 301]
    """
    betas = p._need_betas()
    if n == 0:
        return 1
    if p.multiplicity == Multiplicity.DISTINCT:
        total = 0
        for i, bi in enumerate(betas):
            den = 1
            for j, bj in enumerate(betas):
                if j != i:
                    den *= bi - bj
            total += _pow(bi, n + 2) / den if not is_exact(den) else Fraction(_pow(bi, n + 2)) / den
        return _normalize(total)
    basis = _basis(p)
    coef = _solve3([[f(k) for f in basis] for k in (0, -1, -2)], [1, 0, 0])
    return _normalize(sum(cf * f(n) for cf, f in zip(coef, basis)))


def toeplitz_cf(p: ToeplitzParams):
    """Limit ``K[1] = beta_1 beta_2 / (beta_1 + beta_2)``.

    Proved for distinct roots; for repeated roots it is the continuous
    extension (see :attr:`ToeplitzParams.harmonic_mean_certified`).

    >>> toeplitz_cf(ToeplitzParams.from_betas(3, 2, 1))
    Fraction(6, 5)
    """
    b1, b2, _ = p._need_betas()
    if is_exact(b1) and is_exact(b2):
        return Fraction(b1) * b2 / (b1 + b2)
    return b1 * b2 / (b1 + b2)


def toeplitz_ratio_limit(p: ToeplitzParams):
    """``lim D(n)/D(n-1) = beta_1``."""
    return p._need_betas()[0]
