"""
Second quantization and twisted norms
=====================================

Gamma(A) acts slot-wise and is multiplicative.  For A >= 2 it shrinks degree n
by 2^(-n r) under Gamma(A)^(-r), so twisted norms keep the sqrt(3) bound.
"""

import numpy as np

from gradenorm import (
    AlgebraSpec,
    GammaOperator,
    GradedElement,
    NormSpec,
    WeightSpec,
    basis,
    gamma_apply,
    monomial,
    multiplicativity_residual,
    ratio_sample,
)

spec = AlgebraSpec.grassmann(3, 3)
G = GammaOperator.diag([2, 3, 5])
print("Gamma(diag(2,3,5)) e1^e2^e3 =", gamma_apply(G, monomial(spec, (1, 2, 3))))

rng = np.random.default_rng(0)
sym = AlgebraSpec.symmetric(3, 4)
worst = 0.0
for _ in range(1000):
    a = GradedElement(sym, {w: rng.standard_normal() for w in basis(sym, 2)})
    b = GradedElement(sym, {w: rng.standard_normal() for w in basis(sym, 2)})
    worst = max(worst, multiplicativity_residual(G, a, b))
print("max relative multiplicativity residual over 1000 pairs: %.2e" % worst)

# a non-diagonal positive operator
Q = np.linalg.qr(rng.standard_normal((3, 3)))[0]
A = GammaOperator.from_matrix(Q @ np.diag([2.0, 3.0, 5.0]) @ Q.T)
for r in (0.5, 1.0):
    for op, name in ((G, "diag"), (A, "rotated")):
        nspec = NormSpec(WeightSpec.factorial_inv(), twist=op, twist_exponent=r)
        rep = ratio_sample(sym, nspec, count=2000, seed=1)
        print("twist %-7s r = %.1f  max ratio %.6f" % (name, r, rep.max_ratio))

# Gamma(A)^r maps the twisted norm isometrically onto the untwisted one and
# respects products, so isotropic samples see exactly the same ratios
plain = ratio_sample(sym, NormSpec(WeightSpec.factorial_inv()), count=2000, seed=1)
print("untwisted           max ratio %.6f" % plain.max_ratio)
