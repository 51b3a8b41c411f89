"""Oscillation tests and positive bidiagonal factorizations of tetradiagonal
lower Hessenberg matrices."""

from .contfrac import (CFEvaluation, CFStatus, convergents, evaluate_convergents, finite_cf,
                       infinite_cf_estimate, jacobi_delta_ladder, jacobi_determinant, nested_cf,
                       tail_cf_estimate)
from .core import (AUXILIARY, JACOBI, PRINCIPAL, BandSpec, DeterminantLadder, Truncation,
                   cofactor_determinant, delta1_ladder, delta_ladder, dense_determinant,
                   make_bands, materialize, to_scalar, toeplitz_bands)
from .errors import (DivisionByZero, GateViolation, LengthMismatch, MissingBetas, NonPositiveA,
                     OutOfRange, PBFError, SingularMinor, SizeExceeded, ZeroDenominator,
                     ZeroPivot)
from .gauss_borel import (GaussBorelFactors, JacobiData, auxiliary_jacobi, gauss_borel,
                          verify_factorization)
from .pbf import (BidiagonalFactorization, check_product, lower_bidiagonal_split,
                  pbf_factorize, reconstruct_bands)
from .tn import (TNVerdict, all_minors_nonneg, is_jacobi_oscillatory,
                 is_oscillatory_hessenberg, jacobi_from_pbf, jacobi_matrix, jacobi_minors,
                 jacobi_pbf, jacobi_shift_bound)
from .toeplitz import (Multiplicity, ToeplitzParams, betas_from_abc, discriminant, toeplitz_cf,
                       toeplitz_determinant, toeplitz_ratio_limit)
from .transforms import (TransformRecord, check_factorization_holds, check_factors,
                         check_matrix, check_matrix_shifted, retract, tail_matrix)

__version__ = "0.1.0"
