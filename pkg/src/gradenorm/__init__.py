"""Weighted product norms on truncated graded algebras.

Algebra arithmetic (:mod:`gradenorm.algebra`), weighted Fock-type norms
(:mod:`gradenorm.norms`), second quantization (:mod:`gradenorm.second_quantization`)
and the witness/audit/best-constant analysis (:mod:`gradenorm.analysis`).
"""

from .algebra import (
    AlgebraSpec,
    GradedElement,
    Kind,
    SpecMismatchError,
    TruncationError,
    basis,
    element,
    find_nogo_witness,
    generator,
    monomial,
    mul,
    mul_twisted,
    power,
    product_,
    project_degree,
    unit,
    vector_element,
    zero,
)
from .analysis import (
    SQRT3,
    SQRT4_3,
    AuditReport,
    BestConstant,
    ConvergenceError,
    HypothesisError,
    NoViolationFound,
    SampleReport,
    WitnessReport,
    best_constant,
    best_constant_dense,
    delta_audit,
    nilpotent_witness,
    product_ratio,
    ratio_sample,
    theorem1_sweep,
    unweighted_violation_search,
)
from .norms import Gram, GramMatrixNorm, NormSpec, WeightSpec, degree_inner, inner, monomial_gram, norm
from .permanent import permanent
from .second_quantization import GammaOperator, gamma_apply, gamma_power_apply, multiplicativity_residual

__version__ = "0.1.0"
