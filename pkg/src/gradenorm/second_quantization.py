"""Second quantization: lift an operator on generators to the whole algebra.

``Gamma(A)`` fixes ``e0`` and acts slot-wise on monomials,
``Gamma(A)(f1 o ... o fn) = (A f1) o ... o (A fn)``, so it is multiplicative.
Real powers are taken through the spectral form of a positive ``A``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .algebra import (
    CLASS1_KINDS,
    GradedElement,
    Kind,
    TruncationError,
    _plain,
    mul,
    unit,
)

MAX_DENSE_DEGREE = 12
EIG_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class GammaOperator:
    """Operator ``A`` on the generator space, optionally with its spectral form.

    ``matrix[j, i]`` is the coefficient of ``e_{j+1}`` in ``A e_{i+1}``.
    ``eigenvalues``/``eigenvectors`` are present for Hermitian ``A`` and are
    required for non-integer powers.
    """

    matrix: np.ndarray
    eigenvalues: Optional[np.ndarray] = None
    eigenvectors: Optional[np.ndarray] = None
    diagonal: bool = False

    @classmethod
    def diag(cls, values) -> "GammaOperator":
        vals = list(values)
        exact = all(isinstance(v, (int, Fraction)) for v in vals)
        m = np.empty((len(vals), len(vals)), dtype=object if exact else float)
        m[...] = 0
        for i, v in enumerate(vals):
            m[i, i] = v
        ev = np.array([float(v) for v in vals])
        return cls(m, ev, np.eye(len(vals)), diagonal=True)

    @classmethod
    def from_matrix(cls, A) -> "GammaOperator":
        A = np.asarray(A)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise ValueError("A must be a square matrix")
        if A.dtype != object and np.count_nonzero(A - np.diag(np.diag(A))) == 0:
            return cls.diag(np.diag(A).tolist())
        if A.dtype == object:
            return cls(A)
        if np.allclose(A, A.conj().T, rtol=0, atol=EIG_TOL * max(1.0, np.abs(A).max())):
            vals, vecs = np.linalg.eigh(A)
            resid = np.abs(A @ vecs - vecs * vals).max()
            if resid > EIG_TOL * max(1.0, np.abs(vals).max()):
                raise np.linalg.LinAlgError(f"eigendecomposition residual {resid:.2e} too large")
            return cls(A, vals, vecs)
        return cls(A)

    @property
    def d(self) -> int:
        return self.matrix.shape[0]

    @property
    def has_spectral_form(self) -> bool:
        return self.eigenvalues is not None

    def min_eigenvalue(self) -> float:
        if not self.has_spectral_form:
            raise ValueError("operator has no spectral form")
        return float(np.min(self.eigenvalues))

    def power(self, r: float) -> "GammaOperator":
        """``A**r`` through the eigenvalues; positive spectrum required."""
        if r == 1:
            return self
        if float(r).is_integer() and r >= 0 and not self.has_spectral_form:
            out = np.eye(self.d, dtype=self.matrix.dtype)
            for _ in range(int(r)):
                out = out @ self.matrix
            return GammaOperator.from_matrix(out)
        if not self.has_spectral_form:
            raise ValueError("real powers need the spectral form of a Hermitian operator")
        if np.any(self.eigenvalues <= 0):
            raise ValueError("real powers need a positive spectrum")
        lam = self.eigenvalues ** r
        if self.diagonal:
            if float(r).is_integer() and self.matrix.dtype == object:
                return GammaOperator.diag([self.matrix[i, i] ** int(r) for i in range(self.d)])
            return GammaOperator.diag(lam.tolist())
        V = self.eigenvectors
        m = (V * lam) @ V.conj().T
        return GammaOperator(m, lam, V)


def _images(G: GammaOperator, spec) -> list:
    out = []
    for i in range(G.d):
        terms = {(j + 1,): _plain(G.matrix[j, i]) for j in range(G.d)}
        out.append(GradedElement(spec, terms))
    return out


def _check(G: GammaOperator, a: GradedElement):
    spec = a.spec
    if spec.kind not in CLASS1_KINDS:
        raise ValueError("Gamma(A) is defined on class-1 algebras")
    if G.d != spec.d:
        raise ValueError(f"operator acts on {G.d} generators, algebra has {spec.d}")
    if a.truncated:
        raise TruncationError("element is truncation-flagged")
    if spec.kind is Kind.SUPER and not G.diagonal:
        e = spec.even_count
        m = G.matrix
        if np.any(m[:e, e:] != 0) or np.any(m[e:, :e] != 0):
            raise ValueError("A must preserve the even/odd splitting of a superalgebra")


def gamma_apply(G: GammaOperator, a: GradedElement) -> GradedElement:
    """Apply ``Gamma(A)`` to ``a``."""
    _check(G, a)
    spec = a.spec
    if G.diagonal:
        diag = [_plain(G.matrix[i, i]) for i in range(G.d)]
        out = {}
        for w, c in a:
            f = 1
            for i in w:
                f = f * diag[i - 1]
            out[w] = c * f
        return GradedElement(spec, out)
    images = _images(G, spec)
    out = GradedElement(spec)
    for w, c in a:
        if len(w) > MAX_DENSE_DEGREE:
            raise ValueError(f"dense slot expansion limited to degree {MAX_DENSE_DEGREE}")
        t = unit(spec)
        for i in w:
            t = mul(t, images[i - 1])
        out = out + c * t
    return out


def gamma_power_apply(G: GammaOperator, r: float, a: GradedElement) -> GradedElement:
    """Apply ``Gamma(A)**r = Gamma(A**r)``."""
    if r == 0:
        _check(G, a)
        return a
    return gamma_apply(G.power(r), a)


def _flat_norm(a: GradedElement) -> float:
    return math.sqrt(sum(abs(c) ** 2 for _, c in a))


def multiplicativity_residual(G: GammaOperator, a: GradedElement, b: GradedElement,
                              relative: bool = True) -> float:
    """Size of ``Gamma(A)(a o b) - Gamma(A)a o Gamma(A)b`` in the flat coefficient norm.

    Returns exactly 0.0 when the difference vanishes identically (always the
    case with exact coefficients).
    """
    ab = a * b
    if ab.truncated:
        raise TruncationError("a o b exceeds the truncation degree")
    lhs = gamma_apply(G, ab)
    rhs = gamma_apply(G, a) * gamma_apply(G, b)
    diff = lhs - rhs
    if diff.is_zero():
        return 0.0
    r = _flat_norm(diff)
    if relative:
        scale = max(_flat_norm(lhs), _flat_norm(rhs))
        return r / scale if scale else r
    return r
