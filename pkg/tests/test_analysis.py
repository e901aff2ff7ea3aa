import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gradenorm.algebra import AlgebraSpec, generator, unit
from gradenorm.analysis import (
    SQRT3,
    SQRT4_3,
    HypothesisError,
    NoViolationFound,
    best_constant,
    best_constant_dense,
    delta_audit,
    nilpotent_witness,
    product_ratio,
    ratio_sample,
    theorem1_sweep,
    unweighted_violation_search,
)
from gradenorm.norms import Gram, GramMatrixNorm, NormSpec, WeightSpec

INV = NormSpec(WeightSpec.factorial_inv())


# ---------------------------------------------------------------- witnesses

def test_grassmann_witness():
    rep = theorem1_sweep(AlgebraSpec.grassmann(3, 3), INV)
    assert rep.ratio == pytest.approx(SQRT4_3, abs=1e-12)
    assert rep.lambda_star == pytest.approx(1 / math.sqrt(2), abs=1e-12)
    assert rep.closed_form_ratio == pytest.approx(rep.ratio, rel=1e-9)


def test_clifford_witness():
    rep = theorem1_sweep(AlgebraSpec.clifford(2), INV)
    assert rep.ratio == pytest.approx(math.sqrt(2), abs=1e-9)
    assert rep.lambda_star == pytest.approx(1.0, abs=1e-6)


def test_tensor_witness_closed_form():
    # c1 = 0, c2 = w_2 = 1/2: ratio^2 = 35/25
    rep = theorem1_sweep(AlgebraSpec.tensor(2, 2), INV)
    assert rep.ratio == pytest.approx(math.sqrt(1.4), abs=1e-12)


def test_tensor_witness_tends_to_floor():
    prev = math.inf
    for w2 in (1e-2, 1e-4, 1e-8):
        rep = theorem1_sweep(AlgebraSpec.tensor(1, 2), NormSpec(WeightSpec.explicit([1, 1, w2])))
        assert SQRT4_3 <= rep.ratio < prev
        prev = rep.ratio
    assert prev == pytest.approx(SQRT4_3, abs=1e-6)


def test_witness_hypotheses():
    spec = AlgebraSpec.grassmann(2, 2)
    with pytest.raises(HypothesisError):
        theorem1_sweep(spec, INV, unit(spec) + generator(spec, 1))
    with pytest.raises(HypothesisError):
        theorem1_sweep(AlgebraSpec.clifford(2, omega=-np.eye(2)), INV)


def test_nilpotent_with_scalar_overlap():
    spec = AlgebraSpec.grassmann(1, 1)
    nspec = GramMatrixNorm(spec, [(), (1,)], [[1.0, 0.5], [0.5, 1.0]])
    rep = nilpotent_witness(spec, nspec, generator(spec, 1))
    assert rep.lambda_star == pytest.approx(-1.0)
    assert rep.ratio ** 2 == pytest.approx(3.0, abs=1e-12)
    assert rep.closed_form_ratio == pytest.approx(rep.ratio, abs=1e-12)


def test_nilpotent_delegates():
    spec = AlgebraSpec.superalgebra(2, 2, even_count=1)
    rep = nilpotent_witness(spec, INV, generator(spec, 2))
    assert rep.ratio == pytest.approx(SQRT4_3, abs=1e-12)
    with pytest.raises(ValueError):
        nilpotent_witness(spec, INV, generator(spec, 1))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(1e-3, 1e3), min_size=3, max_size=3),
       st.sampled_from(["tensor", "symmetric", "antisymmetric", "super"]))
def test_floor_for_arbitrary_weights(ws, kind):
    spec = {
        "tensor": AlgebraSpec.tensor(2, 3),
        "symmetric": AlgebraSpec.symmetric(2, 3),
        "antisymmetric": AlgebraSpec.grassmann(3, 3),
        "super": AlgebraSpec.superalgebra(3, 3, even_count=1),
    }[kind]
    rep = theorem1_sweep(spec, NormSpec(WeightSpec.explicit([1.0] + ws)))
    assert rep.ratio >= SQRT4_3 - 1e-9


# ---------------------------------------------------------------- audits

def test_delta_audit_values():
    a = delta_audit(WeightSpec.factorial_inv_shift(), P=50)
    assert a.delta_min == pytest.approx(1.0, abs=1e-12) and a.argmax == (1, 1) and a.passed
    a = delta_audit(WeightSpec.factorial_inv(), P=50)
    assert a.delta_min == pytest.approx(50 / 51, abs=1e-12) and a.argmax == (1, 50)
    a = delta_audit(WeightSpec.flat(), P=50)
    assert a.delta_min == 99 and a.argmax == (50, 50) and not a.passed


def test_delta_audit_oracle():
    # brute-force grid with exact factorials
    w = WeightSpec.sigma_rho_s(-2, 1, 1)
    a = delta_audit(w, P=12)
    vals = {(p, q): (p + q - 1) * math.factorial(p + q) ** -2 * 2 ** (p + q) * (1 + p + q)
            / (math.factorial(p) ** -2 * 2 ** p * (1 + p) * math.factorial(q) ** -2 * 2 ** q * (1 + q))
            for p in range(1, 13) for q in range(1, 13)}
    assert a.delta_min == pytest.approx(max(vals.values()), rel=1e-12)


def test_delta_audit_tie_break():
    # symmetric weights give (p, q) / (q, p) ties; smallest p wins
    a = delta_audit(WeightSpec.factorial_inv(), P=10)
    assert a.argmax[0] <= a.argmax[1]


# ---------------------------------------------------------------- sampling

def test_sample_scalars():
    spec = AlgebraSpec.grassmann(2, 0)
    rep = ratio_sample(spec, INV, count=10)
    assert np.allclose(rep.ratios, 1.0)


def test_sample_ratio_matches_direct_evaluation():
    spec = AlgebraSpec.symmetric(2, 4)
    nspec = NormSpec(WeightSpec.factorial_inv_shift())
    rep = ratio_sample(spec, nspec, count=300, seed=4)
    assert rep.max_ratio == pytest.approx(product_ratio(rep.a, rep.b, nspec), rel=1e-12)
    assert rep.max_ratio <= SQRT3
    assert set(rep.degree_a + rep.degree_b) == {4}


def test_sample_determinism_across_threads():
    spec = AlgebraSpec.grassmann(4, 4)
    r1 = ratio_sample(spec, INV, count=1000, seed=9, threads=1)
    r4 = ratio_sample(spec, INV, count=1000, seed=9, threads=4)
    assert np.array_equal(r1.ratios, r4.ratios)
    assert r1.to_json() == r4.to_json()


def test_sample_complex_field():
    spec = AlgebraSpec.grassmann(3, 3, field="complex")
    rep = ratio_sample(spec, INV, count=200)
    assert rep.max_ratio <= SQRT3
    assert rep.max_ratio == pytest.approx(product_ratio(rep.a, rep.b, INV), rel=1e-12)


def test_mixed_sigma_rho_s_norms():
    spec = AlgebraSpec.grassmann(4, 4)
    w = WeightSpec.sigma_rho_s(-2, 0, 1)
    ceiling = SQRT3 * max(1.0, delta_audit(w, P=4).delta_min)
    assert ratio_sample(spec, NormSpec(w), count=500).max_ratio <= ceiling + 1e-9


# ---------------------------------------------------------------- best constant

def test_best_constant_scalars():
    assert best_constant(AlgebraSpec.grassmann(2, 0), INV).gamma_best == pytest.approx(1.0)


@pytest.mark.parametrize("spec", [
    AlgebraSpec.grassmann(2, 2),
    AlgebraSpec.grassmann(3, 3),
    AlgebraSpec.symmetric(2, 3),
    AlgebraSpec.clifford(2),
    AlgebraSpec.superalgebra(2, 3, even_count=1),
])
def test_best_constant_matches_dense(spec):
    bc = best_constant(spec, INV)
    assert bc.converged
    assert bc.gamma_best == pytest.approx(best_constant_dense(spec, INV), abs=1e-8)


def test_best_constant_cross_norms_matches_dense():
    spec = AlgebraSpec.grassmann(3, 3)
    s, r = NormSpec(WeightSpec.sigma_rho_s(-1, 1, 0)), NormSpec(WeightSpec.sigma_rho_s(-2, 0, -1))
    assert best_constant(spec, s, s, r).gamma_best == pytest.approx(best_constant_dense(spec, s, s, r), abs=1e-8)


def test_best_constant_bounds_samples():
    # the operator norm dominates every sampled ratio
    spec = AlgebraSpec.grassmann(4, 4)
    bc = best_constant(spec, INV)
    assert ratio_sample(spec, INV, count=2000).max_ratio <= bc.gamma_best + 1e-12
    assert SQRT4_3 - 1e-6 <= bc.gamma_best <= SQRT3 + 1e-6


@pytest.mark.parametrize("w", [WeightSpec.factorial_inv(), WeightSpec.factorial_inv_shift(),
                               WeightSpec.sigma_rho_s(-1, 1, -1), WeightSpec.sigma_rho_s(-2, -1, 0)])
def test_ceiling_identical_norms(w):
    for spec in (AlgebraSpec.grassmann(4, 4), AlgebraSpec.symmetric(3, 4)):
        ceiling = SQRT3 * max(1.0, delta_audit(w, P=spec.N).delta_min)
        assert best_constant(spec, NormSpec(w)).gamma_best <= ceiling + 1e-9


# ---------------------------------------------------------------- standard-norm violations

def test_violation_blades():
    rep = unweighted_violation_search(AlgebraSpec.grassmann(6, 6))
    assert rep.ratio == pytest.approx(2 / math.sqrt(3), abs=1e-12)
    assert rep.closed_form_ratio == pytest.approx(rep.ratio, abs=1e-12)
    assert rep.details["candidate"] == "disjoint_blades_3"


def test_violation_symmetric_power():
    rep = unweighted_violation_search(AlgebraSpec.symmetric(1, 2))
    assert rep.ratio == pytest.approx(math.sqrt(2), abs=1e-12)


def test_small_grassmann_has_no_standard_violation():
    # fewer than four odd generators: no blade candidate and the ascent stays at 1
    spec = AlgebraSpec.superalgebra(2, 3, even_count=0)
    with pytest.raises(NoViolationFound):
        unweighted_violation_search(spec)


def test_no_violation_with_normalized_gram():
    nspec = NormSpec(WeightSpec.flat(), Gram.NORMALIZED)
    for spec in (AlgebraSpec.grassmann(6, 6), AlgebraSpec.symmetric(1, 2)):
        with pytest.raises(NoViolationFound):
            unweighted_violation_search(spec, nspec)
