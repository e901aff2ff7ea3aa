"""
The best constant of a truncated Grassmann algebra
==================================================

gamma_best is the largest singular value of x (x) y -> x o y between
orthonormal coordinates.  It is squeezed between sqrt(4/3) and sqrt(3).
"""

import time

from gradenorm import SQRT3, SQRT4_3, AlgebraSpec, NormSpec, WeightSpec, best_constant, best_constant_dense

norm = NormSpec(WeightSpec.factorial_inv())
print("lower %.8f  upper %.8f" % (SQRT4_3, SQRT3))
for d in range(1, 7):
    spec = AlgebraSpec.grassmann(d, d)
    t0 = time.perf_counter()
    bc = best_constant(spec, norm)
    line = "d = N = %d  dim %3d  gamma_best %.10f  (%d its, %.2fs)" % (
        d, bc.dimension, bc.gamma_best, bc.iterations, time.perf_counter() - t0)
    if d <= 3:
        line += "  dense SVD %.10f" % best_constant_dense(spec, norm)
    print(line)

# the shifted weights
shift = NormSpec(WeightSpec.factorial_inv_shift())
for d in (2, 4, 6):
    print("1/(n-1)!  d = %d  gamma_best %.10f" % (d, best_constant(AlgebraSpec.grassmann(d, d), shift).gamma_best))
