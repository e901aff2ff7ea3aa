"""
No algebra norm below sqrt(4/3)
===============================

For any weighted norm with w_0 = 1 the element a = e0 + lam f, with f a unit
generator orthogonal to e0, already forces ||a o a|| / ||a||^2 >= sqrt(4/3).
This walks through the construction for a few algebras.
"""

import math

from gradenorm import AlgebraSpec, NormSpec, WeightSpec, generator, nilpotent_witness, theorem1_sweep

norm = NormSpec(WeightSpec.factorial_inv())

# Grassmann: f = e1 squares to zero, so ||(e0 + lam e1)^2||^2 = 1 + 4 lam^2
g = AlgebraSpec.grassmann(3, 3)
rep = theorem1_sweep(g, norm)
print("grassmann   ratio %.12f  lambda* %.6f" % (rep.ratio, rep.lambda_star))
print("sqrt(4/3) = %.12f,  1/sqrt(2) = %.6f" % (math.sqrt(4 / 3), 1 / math.sqrt(2)))

# the same value through the nilpotent construction on an odd superalgebra generator
s = AlgebraSpec.superalgebra(3, 3, even_count=1)
rep = nilpotent_witness(s, norm, generator(s, 2))
print("super odd   ratio %.12f" % rep.ratio)

# symmetric and tensor algebras: f^2 != 0 only helps
for spec in (AlgebraSpec.symmetric(2, 3), AlgebraSpec.tensor(2, 3)):
    rep = theorem1_sweep(spec, norm)
    print("%-11s ratio %.12f  c1 %.3f  c2 %.3f" % (spec.kind.value, rep.ratio, rep.details["c1"], rep.details["c2"]))

# Clifford: e1 o e1 = e0, the maximum sits at lam = 1 with ratio sqrt(2)
rep = theorem1_sweep(AlgebraSpec.clifford(2), norm)
print("clifford    ratio %.12f  lambda* %.6f" % (rep.ratio, rep.lambda_star))

# arbitrary positive weights never beat the floor
for w in ([1, 5.0, 1e-3, 7.0], [1, 0.01, 100.0, 0.5]):
    rep = theorem1_sweep(g, NormSpec(WeightSpec.explicit(w)))
    print("weights %-22s ratio %.12f" % (w, rep.ratio))
