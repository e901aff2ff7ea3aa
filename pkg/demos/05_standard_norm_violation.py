"""
Why the 1/n! in the degree norm matters
=======================================

Without the 1/n! normalization of the degree-n inner product, even flat
weights break ||a o b|| <= ||a|| ||b||.
"""

import math

from gradenorm import AlgebraSpec, Gram, NoViolationFound, NormSpec, WeightSpec, unweighted_violation_search

rep = unweighted_violation_search(AlgebraSpec.grassmann(6, 6))
print("grassmann d=6:", rep.details["candidate"], "ratio %.15f" % rep.ratio, " 2/sqrt3 = %.15f" % (2 / math.sqrt(3)))
print("a =", rep.a)

rep = unweighted_violation_search(AlgebraSpec.symmetric(1, 2))
print("symmetric d=1: ratio %.15f  sqrt2 = %.15f" % (rep.ratio, math.sqrt(2)))

# same search with the normalized degree inner product finds nothing
try:
    unweighted_violation_search(AlgebraSpec.grassmann(6, 6), NormSpec(WeightSpec.flat(), Gram.NORMALIZED))
except NoViolationFound as exc:
    print("normalized:", exc)
