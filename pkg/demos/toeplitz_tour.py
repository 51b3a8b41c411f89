"""
A constant-band example from end to end
========================================

Toeplitz(6, 11, 6) has symbol roots 3, 2, 1.  We check the closed-form
determinants, watch the continued fraction settle on 6/5 and build a
bidiagonal factorization inside the admissible window for alpha_2.
"""

from fractions import Fraction

from tetrapbf import (ToeplitzParams, betas_from_abc, check_product, delta_ladder, gauss_borel,
                      convergents, pbf_factorize, toeplitz_bands, toeplitz_cf, toeplitz_determinant)

T = toeplitz_bands(6, 11, 6)
p = betas_from_abc(6, 11, 6)
print("roots:", p.betas, p.multiplicity.value)

# closed form against the three-term ladder
ladder = delta_ladder(T, 8)
print("D(n):", [str(x) for x in ladder])
assert all(toeplitz_determinant(p, n) == ladder[n] for n in range(9))

# K[N,1] decreases to beta_1 beta_2 / (beta_1 + beta_2)
f = gauss_borel(T, 25)
ks = convergents(f.l, f.m, 1)
print("K[N,1], N = 2..8:", [str(k) for k in ks[:7]])
print("K[26,1] - 6/5 =", float(ks[-1] - toeplitz_cf(p)))

# any alpha_2 below K[N+1,1] yields a positive factorization
fac = pbf_factorize(T, Fraction(1), 5)
print("alphas:", [str(a) for a in fac.alphas])
print("all positive:", fac.all_positive, " L1 L2 U == T:", check_product(fac, T))

# a confluent case: beta = (2, 1, 1)
q = ToeplitzParams.from_betas(2, 1, 1)
print("(2,1,1) determinants:", [toeplitz_determinant(q, n) for n in range(8)])
