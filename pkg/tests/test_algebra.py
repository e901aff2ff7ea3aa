import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gradenorm.algebra import (
    AlgebraSpec,
    GradedElement,
    Kind,
    SpecMismatchError,
    TruncationError,
    basis,
    canonicalize,
    find_nogo_witness,
    generator,
    monomial,
    monomial_product,
    power,
    project_degree,
    structure_matrix,
    to_vector,
    unit,
)


def e(spec, *word):
    return monomial(spec, word)


# ---------------------------------------------------------------- basics

def test_spec_validation():
    with pytest.raises(ValueError):
        AlgebraSpec(Kind.TENSOR, 0, 2)
    with pytest.raises(ValueError):
        AlgebraSpec.superalgebra(3, 3, even_count=4)
    with pytest.raises(ValueError):
        AlgebraSpec.paired(2, 2, np.eye(3), chi=1)
    assert AlgebraSpec.grassmann(4).N == 4


def test_canonical_words():
    g = AlgebraSpec.grassmann(3, 3)
    assert canonicalize(g, (2, 1)) == (-1, (1, 2))
    assert canonicalize(g, (1, 1)) is None
    s = AlgebraSpec.symmetric(3, 3)
    assert canonicalize(s, (3, 1, 1)) == (1, (1, 1, 3))
    t = AlgebraSpec.tensor(3, 3)
    assert canonicalize(t, (3, 1)) == (1, (3, 1))


def test_grassmann_signs():
    g = AlgebraSpec.grassmann(4, 4)
    assert e(g, 2) * e(g, 1) == -e(g, 1, 2)
    assert e(g, 1, 2) * e(g, 3, 4) == e(g, 1, 2, 3, 4)
    assert e(g, 1, 3) * e(g, 2, 4) == -e(g, 1, 2, 3, 4)
    assert (e(g, 1) * e(g, 1)).is_zero()


def test_grassmann_square_of_unit_plus_generator():
    g = AlgebraSpec.grassmann(3, 3)
    lam = 0.7
    a = unit(g) + lam * generator(g, 1)
    assert a * a == unit(g) + 2 * lam * generator(g, 1)


def test_super_relations():
    s = AlgebraSpec.superalgebra(2, 3, even_count=1)  # x1 even, theta2 odd
    x, th = generator(s, 1), generator(s, 2)
    assert (th * th).is_zero()
    assert x * th == th * x
    assert x * x == e(s, 1, 1)


def test_tensor_concatenation():
    t = AlgebraSpec.tensor(2, 3)
    assert e(t, 2) * e(t, 1) == e(t, 2, 1)
    assert e(t, 2) * e(t, 1) != e(t, 1) * e(t, 2)


def test_truncation_flag():
    g = AlgebraSpec.symmetric(1, 2)
    x = generator(g, 1)
    y = x * x * x
    assert y.truncated and y.is_zero()
    assert not (x * x).truncated


def test_mismatched_specs():
    with pytest.raises(SpecMismatchError):
        generator(AlgebraSpec.grassmann(2, 2), 1) * generator(AlgebraSpec.grassmann(3, 3), 1)


def test_clifford_relations():
    c = AlgebraSpec.clifford(3)
    e1, e2 = generator(c, 1), generator(c, 2)
    assert e1 * e1 == unit(c)
    assert (e1 * e2 + e2 * e1).is_zero()
    assert e1 * e2 == e(c, 1, 2)


def test_paired_generator_relation_general_omega():
    om = np.array([[1.0, 2.0], [-3.0, 0.5]])
    for chi in (0, 1):
        p = AlgebraSpec.paired(2, 2, om, chi=chi)
        for i in (1, 2):
            for j in (1, 2):
                prod = generator(p, i) * generator(p, j)
                assert prod.scalar_part() == pytest.approx(om[i - 1, j - 1])


def test_symmetric_wiener_square():
    # chi = 0: e1 o e1 = M_(1,1) + omega_11 e0
    p = AlgebraSpec.paired(1, 2, [[2.0]], chi=0)
    x = generator(p, 1)
    assert x * x == e(p, 1, 1) + 2.0 * unit(p)


def test_project_degree_and_power():
    g = AlgebraSpec.symmetric(2, 4)
    a = unit(g) + generator(g, 1)
    a3 = power(a, 3)
    assert project_degree(a3, 2) == 3 * e(g, 1, 1)
    assert project_degree(a3, 3) == e(g, 1, 1, 1)


def test_json_roundtrip():
    g = AlgebraSpec.grassmann(3, 3, field="complex")
    a = GradedElement(g, {(): 1.0, (1, 2): 2 - 1j})
    assert GradedElement.from_json(g, a.to_json()) == a


def test_nogo_witness_directions():
    assert find_nogo_witness(AlgebraSpec.grassmann(2, 2)) == generator(AlgebraSpec.grassmann(2, 2), 1)
    assert find_nogo_witness(AlgebraSpec.paired(2, 2, -np.eye(2), chi=1)) is None
    pc = AlgebraSpec.paired(1, 2, [[-1.0 + 0j]], chi=1, field="complex")
    f = find_nogo_witness(pc)
    # f = i e1 gives f o f = +e0
    assert f.coefficient((1,)) == pytest.approx(1j)
    assert (f * f).scalar_part() == pytest.approx(1.0)


def test_structure_matrix_matches_products():
    g = AlgebraSpec.superalgebra(3, 3, even_count=1)
    words = basis(g)
    S = structure_matrix(g, words, words, words).toarray()
    for i, u in enumerate(words):
        for j, v in enumerate(words):
            prod = GradedElement(g, {u: 1.0}) * GradedElement(g, {v: 1.0})
            expect = to_vector(GradedElement(g, {w: c for w, c in prod}), words)
            assert np.allclose(S[:, i * len(words) + j], expect)


def test_monomial_product_table():
    g = AlgebraSpec.grassmann(3, 3)
    assert dict(monomial_product(g, (1, 3), (2,))) == {(1, 2, 3): -1}
    assert dict(monomial_product(g, (1, 2), (2,))) == {}


# ---------------------------------------------------------------- properties

KINDS = [
    AlgebraSpec.tensor(2, 4),
    AlgebraSpec.symmetric(3, 4),
    AlgebraSpec.grassmann(4, 4),
    AlgebraSpec.superalgebra(3, 4, even_count=2),
]


@st.composite
def exact_elements(draw, spec, max_degree):
    words = [w for w in basis(spec, max_degree)]
    coeffs = draw(st.lists(st.integers(-3, 3), min_size=len(words), max_size=len(words)))
    return GradedElement(spec, {w: Fraction(c) for w, c in zip(words, coeffs)})


@st.composite
def triples(draw):
    spec = draw(st.sampled_from(KINDS + [
        AlgebraSpec.paired(3, 3, [[1, 2, 0], [-1, 0, 3], [2, 1, -2]], chi=1),
        AlgebraSpec.paired(3, 3, [[1, 2, 0], [-1, 0, 3], [2, 1, -2]], chi=0),
    ]))
    n1 = draw(st.integers(0, spec.N))
    n2 = draw(st.integers(0, spec.N - n1))
    n3 = spec.N - n1 - n2
    return spec, draw(exact_elements(spec, n1)), draw(exact_elements(spec, n2)), draw(exact_elements(spec, n3))


@settings(max_examples=60, deadline=None)
@given(triples())
def test_associativity_exact(t):
    spec, a, b, c = t
    assert (a * b) * c == a * (b * c)


@settings(max_examples=60, deadline=None)
@given(triples())
def test_distributivity_exact(t):
    spec, a, b, c = t
    if a.max_degree + max(b.max_degree, c.max_degree) <= spec.N:
        assert a * (b + c) == a * b + a * c


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(KINDS[1:]), st.data())
def test_graded_commutativity(spec, data):
    p = data.draw(st.integers(0, spec.N))
    q = data.draw(st.integers(0, spec.N - p))
    pa, pb = data.draw(st.integers(0, 1)), data.draw(st.integers(0, 1))
    a = data.draw(exact_elements(spec, p))
    b = data.draw(exact_elements(spec, q))
    a = GradedElement(spec, {w: c for w, c in a if spec.parity(w) == pa})
    b = GradedElement(spec, {w: c for w, c in b if spec.parity(w) == pb})
    assert a * b == (-1) ** (pa * pb) * (b * a)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(KINDS), st.data())
def test_unit_is_neutral(spec, data):
    a = data.draw(exact_elements(spec, spec.N))
    assert unit(spec) * a == a == a * unit(spec)


def test_random_omega_associativity_float():
    rng = np.random.default_rng(3)
    for chi in (0, 1):
        om = rng.standard_normal((3, 3))
        p = AlgebraSpec.paired(3, 4 if chi == 0 else 3, om, chi=chi)
        for _ in range(50):
            a, b, c = (GradedElement(p, {w: rng.standard_normal() for w in basis(p, 1)}) for _ in range(3))
            lhs, rhs = (a * b) * c, a * (b * c)
            assert (lhs - rhs).max_abs_coefficient() <= 1e-12 * max(1.0, lhs.max_abs_coefficient())


def test_clifford_blade_square():
    # (e1 e2)^2 = -1 in Cl(2) with omega = id
    c = AlgebraSpec.clifford(2)
    b = e(c, 1, 2)
    assert b * b == -unit(c)
    assert math.isclose(float((b * b).scalar_part()), -1.0)


def test_truncation_error_type_exists():
    assert issubclass(TruncationError, ValueError)
