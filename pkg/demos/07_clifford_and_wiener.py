"""
Paired products: Clifford and Wiener algebras
=============================================

A bilinear form omega on the generators turns the antisymmetric (chi = 1) or
symmetric (chi = 0) algebra into a new associative product with
e_i o e_j = (class-1 product) + omega_ij e0.
"""

import numpy as np

from gradenorm import AlgebraSpec, NormSpec, WeightSpec, best_constant, generator, monomial, theorem1_sweep, unit

cl = AlgebraSpec.clifford(3)
e1, e2, e3 = (generator(cl, i) for i in (1, 2, 3))
print("e1 e1       =", e1 * e1)
print("e1 e2 + e2 e1 =", e1 * e2 + e2 * e1)
I = e1 * e2 * e3
print("pseudoscalar squared =", I * I)

# symmetric Wiener product: e1 o e1 = e1^2 + omega_11
wi = AlgebraSpec.paired(1, 4, [[1.0]], chi=0)
x = generator(wi, 1)
print("x o x o x =", x * x * x)

# a non-symmetric form is fine as well
rng = np.random.default_rng(0)
om = rng.standard_normal((2, 2))
p = AlgebraSpec.paired(2, 2, om, chi=1)
a, b, c = (unit(p) + rng.standard_normal() * generator(p, 1) + rng.standard_normal() * generator(p, 2)
           for _ in range(3))
print("associativity defect:", ((a * b) * c - a * (b * c)).max_abs_coefficient())

norm = NormSpec(WeightSpec.factorial_inv())
rep = theorem1_sweep(cl, norm)
print("Clifford witness ratio %.10f at lambda %.4f" % (rep.ratio, rep.lambda_star))
# contractions feed lower degrees: e12 o e12 = -e0 with ||e12|| = 1/2 gives
# ratio 4, so no sqrt(3) bound for the Clifford product under 1/n! weights
b = monomial(AlgebraSpec.clifford(2), (1, 2))
print("||e12 o e12|| / ||e12||^2 = %.6f" % (norm.norm(b * b) / norm.norm(b) ** 2))
print("Clifford best constant (d = 2): %.10f" % best_constant(AlgebraSpec.clifford(2), norm).gamma_best)
print("blade:", monomial(cl, (1, 3)))
