"""
Auditing weight sequences
=========================

The sufficient condition (p+q-1) w_{p+q} <= delta w_p w_q gives the product
bound sqrt(3) max(1, delta).  Compare a few weight families on a grid.
"""

from gradenorm import SQRT3, WeightSpec, delta_audit

families = {
    "1/(n-1)!": WeightSpec.factorial_inv_shift(),
    "1/n!": WeightSpec.factorial_inv(),
    "flat": WeightSpec.flat(),
    "(n!)^-1 (1+n)^-1": WeightSpec.sigma_rho_s(-1, 0, -1),
    "(n!)^-2 (1+n)": WeightSpec.sigma_rho_s(-2, 0, 1),
    "(n!)^-1 (1+n)": WeightSpec.sigma_rho_s(-1, 0, 1),
}

for P in (10, 50):
    print("grid P = %d" % P)
    for name, w in families.items():
        a = delta_audit(w, P=P)
        print("  %-18s delta %-12.6g at %-9s gamma <= %-10.6g %s"
              % (name, a.delta_min, a.argmax, a.gamma_bound, "ok" if a.passed else "exceeds sqrt3"))

# sigma = -1: the sufficient condition asks for s <= 0, yet both signs stay
# bounded as the grid grows (the p = 1 row tends to 2^-s)
for s in (-1, 1):
    w = WeightSpec.sigma_rho_s(-1, 0, s)
    print("s = %+d:" % s, [round(delta_audit(w, P=P).delta_min, 4) for P in (5, 10, 20, 40, 80)])
print("reference sqrt(3) =", SQRT3)
