"""
Retractions, tails and check matrices
=====================================

Each construction starts from an oscillatory matrix and produces one whose
continued fraction stays positive, so a bidiagonal factorization exists.
"""

from fractions import Fraction

from tetrapbf import (check_factorization_holds, check_matrix, convergents, gauss_borel,
                      pbf_factorize, retract, tail_matrix, toeplitz_bands)

T = toeplitz_bands(6, 11, 6)


def k_sequence(bands, depth):
    f = gauss_borel(bands, depth)
    return convergents(f.l, f.m, 1)


# Retraction by s moves every K[N,1] by s.  At s = -6/5 the limit is pushed to zero.
for s in (Fraction(1), Fraction(-11, 10), Fraction(-6, 5)):
    ks = k_sequence(retract(T, s), 30)
    print(f"s = {str(s):>6}: K~[31,1] = {float(ks[-1]):.3e}")

print("PBF at depth 20 for s = -11/10:",
      pbf_factorize(retract(T, Fraction(-11, 10)), None, 20).all_positive)

# Tails: the Schur complement after removing the first k rows and columns
for k in (1, 2, 3):
    tail = tail_matrix(T, k)
    print(f"tail {k}: c'_0 = {tail.c(0)}, b'_1 = {tail.b(1)}, "
          f"PBF at depth 15: {pbf_factorize(tail, None, 15).all_positive}")

# Check matrix: Toeplitz in, Toeplitz out
ch = check_matrix(T)
print("check matrix bands:", [str(x) for x in (ch.a(2), ch.b(1), ch.c(0))])
print("factorization identity holds for N <= 8:",
      all(check_factorization_holds(T, N) for N in range(1, 9)))
