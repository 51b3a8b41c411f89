"""Exception and warning classes shared across the package."""


class PBFError(Exception):
    """Base class for all errors raised by tetrapbf."""


class NonPositiveA(PBFError, ValueError):
    """A second-subdiagonal entry a_n is not strictly positive."""

    def __init__(self, n, value):
        self.n = n
        self.value = value
        super().__init__(f"a_{n} = {value} is not positive")


class LengthMismatch(PBFError, ValueError):
    pass


class OutOfRange(PBFError, IndexError):
    """A band entry or index was requested outside the available range."""


class SingularMinor(PBFError, ArithmeticError):
    """A leading principal minor vanishes, so no Gauss-Borel factorization exists.

    ``n`` is the size of the vanishing minor (size-indexed, ``D(n) = 0``).
    """

    def __init__(self, n):
        self.n = n
        super().__init__(f"leading principal minor of size {n} is zero")


class DivisionByZero(PBFError, ZeroDivisionError):
    pass


class ZeroPivot(DivisionByZero):
    """alpha_{3n} vanished and had to be divided by in the next step."""

    def __init__(self, n):
        self.n = n
        super().__init__(f"alpha_{3 * n} = 0: bidiagonal split breaks down at n = {n}")


class ZeroDenominator(DivisionByZero):
    pass


class SizeExceeded(PBFError, ValueError):
    pass


class MissingBetas(PBFError, ValueError):
    pass


class GateViolation(UserWarning):
    """alpha_2 lies outside the interval where positivity is guaranteed."""
