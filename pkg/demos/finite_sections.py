"""
Finite sections versus the infinite matrix
==========================================

The real-root test on the symbol classifies the semi-infinite Toeplitz
matrix.  A finite section can still be oscillatory when the roots are
complex; the mismatch fades as the section grows.
"""

from fractions import Fraction as F

from tetrapbf import betas_from_abc, discriminant, is_oscillatory_hessenberg, toeplitz_bands

a, b, c = F(1, 4), F(5, 4), F(9, 4)
print("discriminant:", discriminant(a, b, c), "->", betas_from_abc(a, b, c))

T = toeplitz_bands(a, b, c)
for size in (4, 6, 8, 12, 24, 48):
    method = "minors" if size <= 8 else "factorization"
    verdict = is_oscillatory_hessenberg(T, size - 1, method=method)
    print(f"size {size:>2}: oscillatory = {verdict.is_oscillatory} ({method})")
