"""The acceptance battery: one function per criterion.

Each ``criterion_*`` returns a :class:`CriterionResult`; :func:`run_suite`
runs a selection.  The same functions back ``gradenorm suite`` and the
acceptance tests.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

import numpy as np

from .algebra import AlgebraSpec, GradedElement, Kind, basis, generator
from .analysis import (
    SQRT3,
    SQRT4_3,
    best_constant,
    best_constant_dense,
    delta_audit,
    nilpotent_witness,
    ratio_sample,
    theorem1_sweep,
    unweighted_violation_search,
)
from .norms import NormSpec, WeightSpec
from .permanent import permanent
from .second_quantization import GammaOperator, multiplicativity_residual


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    checks: list = field(default_factory=list)
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"criterion {self.number} [{status}] {self.name} ({self.seconds:.2f}s, {len(self.checks)} checks)"

    def to_json(self) -> dict:
        return {"criterion": self.number, "name": self.name, "pass": self.passed,
                "seconds": round(self.seconds, 3), "checks": self.checks}


class _Recorder:
    def __init__(self, number, name):
        self.result = CriterionResult(number, name, True)
        self._t0 = time.perf_counter()

    def check(self, label, ok, **values):
        ok = bool(ok)
        self.result.checks.append({"check": label, "pass": ok, **values})
        if not ok:
            self.result.passed = False
        return ok

    def done(self):
        self.result.seconds = time.perf_counter() - self._t0
        return self.result


def _random_element(spec, rng, max_degree, exact=False, parity=None):
    words = [w for w in basis(spec, max_degree) if parity is None or spec.parity(w) == parity]
    if exact:
        return GradedElement(spec, {w: Fraction(int(rng.integers(-4, 5))) for w in words})
    return GradedElement(spec, {w: float(rng.standard_normal()) for w in words})


def _split(rng, N, parts):
    caps = []
    left = N
    for _ in range(parts - 1):
        c = int(rng.integers(0, left + 1))
        caps.append(c)
        left -= c
    caps.append(left)
    rng.shuffle(caps)
    return caps


def _sup(a: GradedElement) -> float:
    return a.max_abs_coefficient()


# ----------------------------------------------------------------------------------

def criterion_1_nogo_floor(seed: int = 0) -> CriterionResult:
    rec = _Recorder(1, "no-go floor sqrt(4/3) for every class-1 kind and weight family")
    rng = np.random.default_rng(seed)
    explicit = WeightSpec.explicit([1.0] + list(rng.uniform(0.05, 5.0, size=3)))
    families = {
        "factorial_inv": WeightSpec.factorial_inv(),
        "factorial_inv_shift": WeightSpec.factorial_inv_shift(),
        "sigma_rho_s(-1,0,0)": WeightSpec.sigma_rho_s(-1, 0, 0),
        "explicit_random": explicit,
    }
    algebras = {
        "tensor": AlgebraSpec.tensor(3, 3),
        "symmetric": AlgebraSpec.symmetric(3, 3),
        "antisymmetric": AlgebraSpec.grassmann(3, 3),
        "super(even=1)": AlgebraSpec.superalgebra(3, 3, even_count=1),
        "super(even=0)": AlgebraSpec.superalgebra(3, 3, even_count=0),
    }
    for (aname, spec), (wname, w) in itertools.product(algebras.items(), families.items()):
        nspec = NormSpec(w)
        t0 = time.perf_counter()
        rep = theorem1_sweep(spec, nspec)
        dt = time.perf_counter() - t0
        rec.check(f"{aname}/{wname} ratio >= sqrt(4/3)", rep.ratio >= SQRT4_3 - 1e-9 and dt < 1.0,
                  ratio=rep.ratio, seconds=dt)
        odd = [i for i in range(1, spec.d + 1) if spec.is_odd(i)]
        if odd:
            t0 = time.perf_counter()
            rep = nilpotent_witness(spec, nspec, generator(spec, odd[0]))
            dt = time.perf_counter() - t0
            rec.check(f"{aname}/{wname} nilpotent ratio == sqrt(4/3) at 1/sqrt(2)",
                      abs(rep.ratio - SQRT4_3) <= 1e-9 and abs(rep.lambda_star - 1 / math.sqrt(2)) <= 1e-9
                      and dt < 1.0, ratio=rep.ratio, lambda_star=rep.lambda_star, seconds=dt)
    return rec.done()


def criterion_2_sqrt3_sampling(seed: int = 0, count: int = 10_000, threads: int = 1) -> CriterionResult:
    rec = _Recorder(2, "sampled ratios <= sqrt(3) under 1/n! and 1/(n-1)! weights")
    t0 = time.perf_counter()
    for spec in (AlgebraSpec.grassmann(6, 6), AlgebraSpec.symmetric(6, 6)):
        for w in (WeightSpec.factorial_inv(), WeightSpec.factorial_inv_shift()):
            r = ratio_sample(spec, NormSpec(w), count=count, seed=seed, threads=threads)
            rec.check(f"{spec.kind.value} d=6 N=6 {w.family}", r.max_ratio <= SQRT3 + 1e-9,
                      max_ratio=r.max_ratio, count=count)
    rec.check("runtime < 60 s", time.perf_counter() - t0 < 60.0, seconds=time.perf_counter() - t0)
    return rec.done()


def criterion_3_delta_audits(P: int = 50) -> CriterionResult:
    rec = _Recorder(3, "delta audits of the weight inequality")
    t0 = time.perf_counter()
    a = delta_audit(WeightSpec.factorial_inv_shift(), P=P)
    rec.check("1/(n-1)!: delta = 1", abs(a.delta_min - 1.0) <= 1e-12, delta=a.delta_min, argmax=list(a.argmax))
    a = delta_audit(WeightSpec.factorial_inv(), P=P)
    rec.check("1/n!: delta = P/(P+1)", abs(a.delta_min - P / (P + 1)) <= 1e-12, delta=a.delta_min,
              argmax=list(a.argmax))
    a = delta_audit(WeightSpec.flat(), P=P)
    rec.check("flat: delta = 2P-1", a.delta_min == 2 * P - 1, delta=a.delta_min, argmax=list(a.argmax))
    rec.check("runtime < 1 s", time.perf_counter() - t0 < 1.0, seconds=time.perf_counter() - t0)
    return rec.done()


def criterion_4_best_constant() -> CriterionResult:
    rec = _Recorder(4, "best-constant sandwich sqrt(4/3) <= gamma_best <= sqrt(3)")
    nspec = NormSpec(WeightSpec.factorial_inv())
    for d in (2, 3, 4):
        spec = AlgebraSpec.grassmann(d, d)
        t0 = time.perf_counter()
        bc = best_constant(spec, nspec)
        dt = time.perf_counter() - t0
        rec.check(f"d=N={d} sandwich", SQRT4_3 - 1e-6 <= bc.gamma_best <= SQRT3 + 1e-6 and dt < 120,
                  gamma_best=bc.gamma_best, iterations=bc.iterations, seconds=dt)
        if d <= 3:
            ref = best_constant_dense(spec, nspec)
            rec.check(f"d=N={d} power iteration == dense SVD", abs(bc.gamma_best - ref) <= 1e-8,
                      gamma_best=bc.gamma_best, dense=ref)
    return rec.done()


def criterion_5_standard_violation() -> CriterionResult:
    rec = _Recorder(5, "standard (unnormalized) degree norms violate ||ab|| <= ||a|| ||b||")
    rep = unweighted_violation_search(AlgebraSpec.grassmann(6, 6))
    rec.check("grassmann d=6 disjoint blades ratio 2/sqrt(3)",
              abs(rep.ratio - 2 / math.sqrt(3)) <= 1e-12 and rep.details.get("candidate") == "disjoint_blades_3",
              ratio=rep.ratio, candidate=rep.details.get("candidate"))
    rep = unweighted_violation_search(AlgebraSpec.symmetric(1, 2))
    rec.check("symmetric d=1 ratio sqrt(2)", abs(rep.ratio - math.sqrt(2)) <= 1e-12, ratio=rep.ratio)
    return rec.done()


def criterion_6_gamma_laws(seed: int = 0, pairs: int = 1000, count: int = 10_000) -> CriterionResult:
    rec = _Recorder(6, "second quantization: multiplicativity and twisted sqrt(3) bound")
    G = GammaOperator.diag([2.0, 3.0, 5.0])
    rng = np.random.default_rng(seed)
    for spec in (AlgebraSpec.grassmann(3, 4), AlgebraSpec.symmetric(3, 4)):
        worst = 0.0
        for _ in range(pairs):
            p, q = _split(rng, spec.N, 2)
            a = _random_element(spec, rng, p)
            b = _random_element(spec, rng, q)
            worst = max(worst, multiplicativity_residual(G, a, b))
        rec.check(f"{spec.kind.value} residual <= 1e-10", worst <= 1e-10, worst=worst, pairs=pairs)
    R = np.linalg.qr(np.random.default_rng(seed + 1).standard_normal((3, 3)))[0]
    dense = GammaOperator.from_matrix(R @ np.diag([2.0, 3.0, 5.0]) @ R.T)
    for spec in (AlgebraSpec.grassmann(3, 3), AlgebraSpec.symmetric(3, 4)):
        for op, name in ((G, "diag(2,3,5)"), (dense, "rotated diag(2,3,5)")):
            for r in (1.0, 0.5):
                nspec = NormSpec(WeightSpec.factorial_inv(), twist=op, twist_exponent=r)
                n = count if op is G else count // 10
                rep = ratio_sample(spec, nspec, count=n, seed=seed)
                rec.check(f"{spec.kind.value} {name}^{r} twisted ratio <= sqrt(3)", rep.max_ratio <= SQRT3 + 1e-9,
                          max_ratio=rep.max_ratio, count=n)
    return rec.done()


def _naive_permanent(m):
    n = len(m)
    return sum(math.prod(m[i][s[i]] for i in range(n)) for s in permutations(range(n)))


def criterion_7_algebra(seed: int = 0, trials: int = 1000) -> CriterionResult:
    rec = _Recorder(7, "associativity, graded commutativity, exact mode, Ryser permanent")
    rng = np.random.default_rng(seed)
    om = rng.standard_normal((3, 3))
    algebras = [
        AlgebraSpec.tensor(3, 4),
        AlgebraSpec.symmetric(3, 4),
        AlgebraSpec.grassmann(3, 3),
        AlgebraSpec.superalgebra(3, 4, even_count=1),
        AlgebraSpec.paired(3, 4, om, chi=0),
        AlgebraSpec.paired(3, 3, om, chi=1),
        AlgebraSpec.clifford(3, 3),
    ]
    for spec in algebras:
        worst = 0.0
        for _ in range(trials):
            pa, pb, pc = _split(rng, spec.N, 3)
            a, b, c = (_random_element(spec, rng, k) for k in (pa, pb, pc))
            left, right = (a * b) * c, a * (b * c)
            scale = max(_sup(left), _sup(right), 1e-300)
            worst = max(worst, _sup(left - right) / scale)
        label = spec.kind.value + (f"(chi={spec.chi})" if spec.kind is Kind.PAIRED else "")
        rec.check(f"{label} associativity", worst <= 1e-10, worst=worst, trials=trials)
    for spec in algebras[1:4]:
        worst = 0.0
        for _ in range(trials):
            p, q = _split(rng, spec.N, 2)
            pa, pb = int(rng.integers(0, 2)), int(rng.integers(0, 2))
            a = _random_element(spec, rng, p, parity=pa)
            b = _random_element(spec, rng, q, parity=pb)
            ab, ba = a * b, b * a
            sign = -1 if pa * pb else 1
            scale = max(_sup(ab), 1e-300)
            worst = max(worst, _sup(ab - sign * ba) / scale)
        rec.check(f"{spec.kind.value} graded commutativity", worst <= 1e-10, worst=worst, trials=trials)
    # exact rational arithmetic
    om_q = [[Fraction(int(x)) for x in row] for row in rng.integers(-3, 4, size=(3, 3))]
    exact_specs = [AlgebraSpec.tensor(3, 3), AlgebraSpec.symmetric(3, 3), AlgebraSpec.grassmann(3, 3),
                   AlgebraSpec.superalgebra(3, 3, even_count=1), AlgebraSpec.paired(3, 3, om_q, chi=0),
                   AlgebraSpec.paired(3, 3, om_q, chi=1)]
    Gq = GammaOperator.diag([2, 3, 5])
    for spec in exact_specs:
        nonzero = 0
        for _ in range(200):
            pa, pb, pc = _split(rng, spec.N, 3)
            a, b, c = (_random_element(spec, rng, k, exact=True) for k in (pa, pb, pc))
            if not ((a * b) * c - a * (b * c)).is_zero():
                nonzero += 1
            if spec.kind is not Kind.PAIRED and multiplicativity_residual(Gq, a, b) != 0.0:
                nonzero += 1
        rec.check(f"{spec.kind.value} exact residuals vanish", nonzero == 0, failures=nonzero)
    mismatches = 0
    for n in range(1, 8):
        for _ in range(5):
            m = rng.integers(-5, 6, size=(n, n))
            if permanent(m) != _naive_permanent(m.tolist()):
                mismatches += 1
    rec.check("Ryser == naive expansion, n = 1..7", mismatches == 0, mismatches=mismatches)
    return rec.done()


CROSS_GRID = [(s, r, t) for s in (-1, -2) for r in (-1, 0, 1) for t in (-1, 0)]


def cross_parameter_pairs():
    """(output, input) parameter triples covered by the cross-norm estimates.

    Identical triples (all admissible on this grid: sigma = -1 only with
    s <= 0), then sigma < sigma', then sigma = sigma' with rho < rho'.
    """
    same = [(g, g) for g in CROSS_GRID]
    cross = [(o, i) for o in CROSS_GRID for i in CROSS_GRID
             if o[0] < i[0] or (o[0] == i[0] and o[1] < i[1])]
    return same + cross


def criterion_8_cross_parameters(seed: int = 0, count: int = 500) -> CriterionResult:
    rec = _Recorder(8, "cross-parameter estimates <= sqrt(3) max(1, delta)")
    for spec in (AlgebraSpec.grassmann(4, 4), AlgebraSpec.symmetric(3, 4)):
        worst = 0.0
        failures = []
        for out, inp in cross_parameter_pairs():
            w_out, w_in = WeightSpec.sigma_rho_s(*out), WeightSpec.sigma_rho_s(*inp)
            audit = delta_audit(w_in, w_in, w_out, P=spec.N)
            ceiling = SQRT3 * max(1.0, audit.delta_min)
            r = ratio_sample(spec, NormSpec(w_in), NormSpec(w_in), NormSpec(w_out), count=count, seed=seed)
            worst = max(worst, r.max_ratio / ceiling)
            if r.max_ratio > ceiling + 1e-9:
                failures.append({"out": out, "in": inp, "max_ratio": r.max_ratio, "ceiling": ceiling})
        rec.check(f"{spec.kind.value} {len(cross_parameter_pairs())} parameter pairs", not failures,
                  worst_fraction_of_ceiling=worst, failures=failures)
    return rec.done()


CRITERIA = {
    1: criterion_1_nogo_floor,
    2: criterion_2_sqrt3_sampling,
    3: criterion_3_delta_audits,
    4: criterion_4_best_constant,
    5: criterion_5_standard_violation,
    6: criterion_6_gamma_laws,
    7: criterion_7_algebra,
    8: criterion_8_cross_parameters,
}


def run_suite(criteria=None, seed: int = 0, threads: int = 1) -> list:
    out = []
    for k in criteria or sorted(CRITERIA):
        fn = CRITERIA[k]
        kwargs = {}
        if "seed" in fn.__code__.co_varnames:
            kwargs["seed"] = seed
        if "threads" in fn.__code__.co_varnames:
            kwargs["threads"] = threads
        out.append(fn(**kwargs))
    return out
