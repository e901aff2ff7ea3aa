"""
Random pairs under factorial weights
====================================

With w_n = 1/n! or 1/(n-1)! the product satisfies ||a o b|| <= sqrt(3)||a|| ||b||.
Sample random pairs in orthonormal coordinates and look at the distribution.
"""

import numpy as np

from gradenorm import SQRT3, AlgebraSpec, NormSpec, WeightSpec, ratio_sample

for spec in (AlgebraSpec.grassmann(6, 6), AlgebraSpec.symmetric(6, 6)):
    for w in (WeightSpec.factorial_inv(), WeightSpec.factorial_inv_shift()):
        rep = ratio_sample(spec, NormSpec(w), count=10_000, seed=0, threads=4)
        q = rep.quantiles
        print("%-13s %-19s max %.6f  median %.4f  p99 %.4f  (sqrt3 = %.6f)"
              % (spec.kind.value, w.family, rep.max_ratio, q[0.5], q[0.99], SQRT3))

# worst pair of the last run, split by degree
rep_deg = np.bincount(rep.degree_a, weights=rep.ratios) / np.bincount(rep.degree_a)
print("mean ratio by degree of a:", np.round(rep_deg, 4))
