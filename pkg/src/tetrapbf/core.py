"""Band-encoded tetradiagonal Hessenberg matrices and their determinants.

A tetradiagonal lower Hessenberg matrix is stored through its three lower
bands, using the same index offsets everywhere in the package::

    c_0, c_1, c_2, ...     diagonal
    b_1, b_2, b_3, ...     first subdiagonal   (row n, column n-1)
    a_2, a_3, a_4, ...     second subdiagonal  (row n, column n-2)

The first superdiagonal is the constant 1.

Determinant ladders are *size indexed*: ``D(n)`` is the determinant of the
``n x n`` leading principal submatrix, with ``D(0) = 1`` and the virtual
values ``D(-1) = D(-2) = 0``.  The truncation ``T^[N]`` has ``N + 1`` rows,
so ``det T^[N] = D(N + 1)``.

Scalars are either exact (``int`` / ``fractions.Fraction``) or ``float``.
All routines are written against the arithmetic operators only, so the
same code runs in both modes; exact inputs never get rounded.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

from .errors import LengthMismatch, NonPositiveA, OutOfRange

Scalar = Union[Fraction, float]

PRINCIPAL = "principal"
AUXILIARY = "auxiliary"
JACOBI = "jacobi"


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def exactify(x):
    """Promote plain ints to ``Fraction`` so that ``/`` stays exact."""
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    return x


def to_scalar(x, exact: bool = True) -> Scalar:
    """Convert ``x`` (number or string such as ``"25/6"`` or ``"0.1"``) to a scalar.

    In exact mode decimal strings become exact decimal fractions and floats
    become their exact binary value.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if exact:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, str):
            return Fraction(x.strip())
        return Fraction(x)
    if isinstance(x, str):
        return float(Fraction(x.strip()))
    return float(x)


def _as_getter(src, start):
    if callable(src):
        return src
    seq = tuple(src)
    return lambda n: seq[n - start]


class BandSpec:
    """The bands ``(c, b, a)`` of a tetradiagonal Hessenberg matrix.

    ``length`` is the largest available index ``N`` (so the largest
    truncation is ``T^[N]``) or ``None`` for a semi-infinite matrix whose
    entries are produced on demand.  Lazily produced entries are memoized;
    the memo is guarded by a lock so a shared instance can be read from
    several threads.

    Below the start of a band the entry is read as zero (``b_0 = 0``,
    ``a_0 = a_1 = 0``), which is what the determinant recurrences need.
    """

    def __init__(self, c, b, a, length: Optional[int] = None, name: str = ""):
        self._get = {"c": _as_getter(c, 0), "b": _as_getter(b, 1), "a": _as_getter(a, 2)}
        self._memo: dict = {}
        self._lock = threading.Lock()
        self.length = length
        self.name = name

    @classmethod
    def from_functions(cls, c: Callable, b: Callable, a: Callable,
                       length: Optional[int] = None, name: str = "") -> "BandSpec":
        return cls(c, b, a, length=length, name=name)

    # -- entry access -------------------------------------------------

    def _entry(self, band: str, n: int, start: int):
        if n < start:
            return 0
        if self.length is not None and n > self.length:
            raise OutOfRange(f"{band}_{n} requested but bands end at index {self.length}")
        key = (band, n)
        try:
            return self._memo[key]
        except KeyError:
            pass
        try:
            value = exactify(self._get[band](n))
        except (IndexError, KeyError) as exc:
            raise OutOfRange(f"{band}_{n} is not available") from exc
        if band == "a" and not value > 0:
            raise NonPositiveA(n, value)
        with self._lock:
            self._memo[key] = value
        return value

    def c(self, n: int):
        return self._entry("c", n, 0)

    def b(self, n: int):
        return self._entry("b", n, 1)

    def a(self, n: int):
        return self._entry("a", n, 2)

    # -- conveniences ---------------------------------------------------

    @property
    def finite(self) -> bool:
        return self.length is not None

    @property
    def exact(self) -> bool:
        return is_exact(self.c(0))

    def arrays(self, N: Optional[int] = None):
        """Return ``(c, b, a)`` as lists through index ``N``."""
        if N is None:
            if self.length is None:
                raise OutOfRange("semi-infinite bands need an explicit depth")
            N = self.length
        return ([self.c(n) for n in range(N + 1)],
                [self.b(n) for n in range(1, N + 1)],
                [self.a(n) for n in range(2, N + 1)])

    def truncate(self, N: int) -> "BandSpec":
        return make_bands(*self.arrays(N))

    def shift(self, k: int) -> "BandSpec":
        """Bands of ``T^{[., k]}``: index ``n`` of the result is ``n + k`` here."""
        length = None if self.length is None else self.length - k
        return BandSpec(lambda n: self.c(n + k), lambda n: self.b(n + k),
                        lambda n: self.a(n + k), length=length)

    def same_as(self, other: "BandSpec", N: Optional[int] = None) -> bool:
        if N is None:
            if self.length != other.length or self.length is None:
                return False
            N = self.length
        return self.arrays(N) == other.arrays(N)

    def __repr__(self):
        if self.length is None:
            return f"BandSpec({self.name or 'lazy'}, semi-infinite)"
        c, b, a = self.arrays()
        return f"BandSpec(c={c}, b={b}, a={a})"


def make_bands(c: Sequence, b: Sequence, a: Sequence) -> BandSpec:
    """Validated finite bands with ``len(c) = N + 1``, ``len(b) = N``, ``len(a) = N - 1``.

    >>> make_bands([6, 6, 6, 6], [11, 11, 11], [6, 6]).length
    3
    """
    c, b, a = tuple(c), tuple(b), tuple(a)
    N = len(c) - 1
    if N < 0:
        raise LengthMismatch("c must have at least one entry")
    if len(b) != N or len(a) != max(N - 1, 0):
        raise LengthMismatch(
            f"|c| = {len(c)} requires |b| = {N} and |a| = {max(N - 1, 0)}, "
            f"got |b| = {len(b)}, |a| = {len(a)}")
    for n, value in enumerate(a, start=2):
        if not value > 0:
            raise NonPositiveA(n, value)
    return BandSpec(c, b, a, length=N)


def toeplitz_bands(a, b, c, size: Optional[int] = None) -> BandSpec:
    """Constant bands ``a_n = a``, ``b_n = b``, ``c_n = c``.

    With ``size=None`` the matrix is semi-infinite; otherwise the bands end
    at index ``size``.
    """
    if not a > 0:
        raise NonPositiveA(2, a)
    return BandSpec(lambda n: c, lambda n: b, lambda n: a, length=size,
                    name=f"toeplitz({a}, {b}, {c})")


# -- truncations -----------------------------------------------------------


@dataclass(frozen=True)
class Truncation:
    """A finite square piece of a banded matrix.

    ``principal``: ``T^[N,k]``, rows/columns ``k..N``.
    ``auxiliary``: ``T_1^[N,k]``, first row and last column of ``T^[N]``
    removed, then rows ``k+1..N`` kept (size ``N - k``).
    ``jacobi``: ``J^[N,k]`` built from Gauss-Borel factors (``k >= 1``).
    """

    source: object
    N: int
    k: int = 0
    variant: str = PRINCIPAL

    def __post_init__(self):
        if not 0 <= self.k <= self.N:
            raise OutOfRange(f"need 0 <= k <= N, got k={self.k}, N={self.N}")


def materialize(t: Truncation):
    """Dense list-of-lists matrix for a truncation."""
    N, k = t.N, t.k
    if t.variant == PRINCIPAL:
        bands = t.source
        idx = range(k, N + 1)
        rows = []
        for i in idx:
            row = []
            for j in idx:
                if j == i + 1:
                    row.append(1)
                elif j == i:
                    row.append(bands.c(i))
                elif j == i - 1:
                    row.append(bands.b(i))
                elif j == i - 2:
                    row.append(bands.a(i))
                else:
                    row.append(0)
            rows.append(row)
        return rows
    if t.variant == AUXILIARY:
        bands = t.source
        idx = range(k + 1, N + 1)
        rows = []
        for i in idx:
            row = []
            for j in idx:
                if j == i:
                    row.append(bands.b(i))
                elif j == i + 1:
                    row.append(bands.c(i))
                elif j == i + 2:
                    row.append(1)
                elif j == i - 1:
                    row.append(bands.a(i))
                else:
                    row.append(0)
            rows.append(row)
        return rows
    if t.variant == JACOBI:
        f = t.source
        if k < 1:
            raise OutOfRange("Jacobi truncations start at k >= 1")
        idx = range(k, N + 1)
        return [[f.mm(i) if j == i else 1 if j == i + 1 else f.ll(i) if j == i - 1 else 0
                 for j in idx] for i in idx]
    raise ValueError(f"unknown truncation variant {t.variant!r}")


# -- determinants ------------------------------------------------------------


@dataclass(frozen=True)
class DeterminantLadder:
    """A run of determinants.

    For the ``delta`` and ``Delta`` families ``values[n]`` is the size-``n``
    leading minor.  For ``delta1`` ``values[k]`` is ``det T_1^[N,k]``.
    """

    values: tuple
    family: str

    def __getitem__(self, n):
        if isinstance(n, int) and n < 0 and self.family == "delta":
            return 0
        return self.values[n]

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)


def delta_ladder(bands: BandSpec, maxN: int) -> DeterminantLadder:
    """``D(0..maxN)`` via ``D(n) = c_{n-1} D(n-1) - b_{n-1} D(n-2) + a_{n-1} D(n-3)``.

    ``D(n) = det T^[n-1]``.

    >>> [int(x) for x in delta_ladder(toeplitz_bands(6, 11, 6), 4)]
    [1, 6, 25, 90, 301]
    """
    d = [1]
    dm1 = dm2 = 0
    for n in range(1, maxN + 1):
        i = n - 1
        value = bands.c(i) * d[-1] - bands.b(i) * dm1 + bands.a(i) * dm2
        dm2, dm1 = dm1, d[-1]
        d.append(value)
    return DeterminantLadder(tuple(d), "delta")


def _bareiss(rows):
    """Fraction-free elimination on an integer matrix."""
    m = [list(r) for r in rows]
    n = len(m)
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - mik * row_k[j]) // prev
        prev = pivot
    return sign * m[n - 1][n - 1]


def _integer_scaled(rows):
    """Scale an exact matrix to integers; return (int rows, common denominator)."""
    den = 1
    for r in rows:
        for x in r:
            if isinstance(x, Fraction):
                den = den * x.denominator // math.gcd(den, x.denominator)
    return [[int(x * den) for x in r] for r in rows], den


def _float_det(rows):
    m = [[float(x) for x in r] for r in rows]
    n = len(m)
    det = 1.0
    for k in range(n):
        p = max(range(k, n), key=lambda r: abs(m[r][k]))
        if m[p][k] == 0.0:
            return 0.0
        if p != k:
            m[k], m[p] = m[p], m[k]
            det = -det
        det *= m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            if f:
                for j in range(k + 1, n):
                    m[i][j] -= f * m[k][j]
    return det


def dense_determinant(rows) -> Scalar:
    """Determinant of a square list-of-lists matrix.

    Exact input uses Bareiss elimination on the integer-scaled matrix; any
    float entry switches to partial-pivot elimination.
    """
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix is not square")
    if n == 0:
        return Fraction(1)
    if all(is_exact(x) for r in rows for x in r):
        ints, den = _integer_scaled(rows)
        return Fraction(_bareiss(ints), den ** n)
    return _float_det(rows)


def cofactor_determinant(rows) -> Scalar:
    """Laplace expansion along the first row.  Slow; meant as an oracle."""
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    for j, x in enumerate(rows[0]):
        if x == 0:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = x * cofactor_determinant(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def delta1_ladder(bands: BandSpec, N: int) -> DeterminantLadder:
    """``det T_1^[N,k]`` for ``k = 0..N``; ``values[N] = 1`` (empty matrix)."""
    values = [dense_determinant(materialize(Truncation(bands, N, k, AUXILIARY)))
              for k in range(N + 1)]
    return DeterminantLadder(tuple(values), "delta1")


def matmul(x, y):
    inner = len(y)
    return [[sum((xr[t] * y[t][j] for t in range(inner) if xr[t] and y[t][j]), 0)
             for j in range(len(y[0]))] for xr in x]


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(m):
    return [list(r) for r in zip(*m)]
