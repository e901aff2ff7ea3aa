"""Weighted Hilbert norms on truncated graded algebras.

The degree-n inner product is diagonal on canonical monomials.  With the
normalized convention a generator product ``e_{i1} o ... o e_{in}`` over
orthonormal generators has squared norm ``per(G)/n!`` (symmetric letters)
or ``det(G)/n! = 1/n!`` (antisymmetric letters), ``G`` the Gram matrix of
the factors; the standard convention drops the ``1/n!``.  The composite
norm is ``||a||^2 = sum_n w_n ||a_n||_n^2``.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .algebra import AlgebraSpec, GradedElement, Kind, TruncationError, to_vector
from .second_quantization import GammaOperator, gamma_apply, gamma_power_apply

LOG_FACTORIAL_CUTOFF = 20


class Gram(str, Enum):
    NORMALIZED = "normalized"
    STANDARD = "standard"


@lru_cache(maxsize=None)
def _monomial_gram_exact(carrier: Kind, even_count: int, word: tuple, gram: Gram) -> Fraction:
    n = len(word)
    if carrier is Kind.TENSOR:
        return Fraction(1)
    if carrier is Kind.ANTISYMMETRIC:
        num = 1
    else:
        mult = Counter(i for i in word if carrier is Kind.SYMMETRIC or i <= even_count)
        num = math.prod(math.factorial(m) for m in mult.values())
    if gram is Gram.NORMALIZED:
        return Fraction(num, math.factorial(n))
    return Fraction(num)


def monomial_gram(spec: AlgebraSpec, word, gram: Gram = Gram.NORMALIZED, exact: bool = False):
    """Squared degree norm of one canonical basis monomial."""
    g = _monomial_gram_exact(spec.carrier, spec.even_count, tuple(word), Gram(gram))
    return g if exact else float(g)


def degree_inner(a: GradedElement, b: GradedElement, gram: Gram = Gram.NORMALIZED):
    """Inner product of two homogeneous elements of the same degree.

    Antilinear in ``a``.  Distinct canonical monomials are orthogonal.
    """
    if a.spec != b.spec:
        raise ValueError("operands belong to different algebras")
    da, db = a.degrees, b.degrees
    if len(da) > 1 or len(db) > 1 or (da and db and da != db):
        raise ValueError("degree_inner needs homogeneous arguments of equal degree")
    total = 0
    for w, x in a:
        y = b.coefficient(w)
        if y:
            total += x.conjugate() * y * monomial_gram(a.spec, w, gram)
    return total


# ----------------------------------------------------------------------------------
# weights
# ----------------------------------------------------------------------------------

FAMILIES = ("explicit", "factorial_inv_shift", "factorial_inv", "sigma_rho_s", "standard_factorial")


def _log_factorial(n: int) -> float:
    if n <= LOG_FACTORIAL_CUTOFF:
        return math.log(math.factorial(n))
    return math.lgamma(n + 1)


@dataclass(frozen=True)
class WeightSpec:
    """Positive degree weights ``w_n`` with ``w_0 = 1``.

    Families: ``explicit`` (a list ``w_0..w_N``), ``factorial_inv_shift``
    (``1/(n-1)!``), ``factorial_inv`` (``1/n!``), ``sigma_rho_s``
    (``(n!)**sigma * 2**(rho*n) * (1+n)**s``) and ``standard_factorial``
    (``n!``).
    """

    family: str
    values: tuple = ()
    sigma: float = 0.0
    rho: float = 0.0
    s: float = 0.0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown weight family {self.family!r}")
        if self.family == "explicit":
            vals = tuple(self.values)
            if not vals or vals[0] != 1:
                raise ValueError("explicit weights need w_0 = 1")
            if any(not v > 0 for v in vals):
                raise ValueError("weights must be positive")
            object.__setattr__(self, "values", vals)

    @classmethod
    def explicit(cls, values):
        return cls("explicit", tuple(values))

    @classmethod
    def factorial_inv(cls):
        return cls("factorial_inv")

    @classmethod
    def factorial_inv_shift(cls):
        return cls("factorial_inv_shift")

    @classmethod
    def sigma_rho_s(cls, sigma, rho=0.0, s=0.0):
        return cls("sigma_rho_s", sigma=float(sigma), rho=float(rho), s=float(s))

    @classmethod
    def standard_factorial(cls):
        return cls("standard_factorial")

    @classmethod
    def flat(cls):
        return cls.sigma_rho_s(0.0, 0.0, 0.0)

    def max_degree(self) -> Optional[int]:
        return len(self.values) - 1 if self.family == "explicit" else None

    def to_json(self) -> dict:
        out = {"w_family": self.family}
        if self.family == "explicit":
            out["weights"] = [float(v) for v in self.values]
        if self.family == "sigma_rho_s":
            out.update(sigma=self.sigma, rho=self.rho, s=self.s)
        return out


def log_weight(spec: WeightSpec, n: int) -> float:
    if n < 0:
        raise ValueError("degree must be non-negative")
    if n == 0:
        return 0.0
    f = spec.family
    if f == "explicit":
        if n >= len(spec.values):
            raise ValueError(f"explicit weights only cover degrees 0..{len(spec.values) - 1}")
        return math.log(spec.values[n])
    if f == "factorial_inv_shift":
        return -_log_factorial(n - 1)
    if f == "factorial_inv":
        return -_log_factorial(n)
    if f == "standard_factorial":
        return _log_factorial(n)
    return spec.sigma * _log_factorial(n) + spec.rho * n * math.log(2.0) + spec.s * math.log1p(n)


def weight(spec: WeightSpec, n: int) -> float:
    """The weight ``w_n``; direct evaluation up to n = 20, log-space beyond."""
    if n == 0:
        return 1.0
    f = spec.family
    if n <= LOG_FACTORIAL_CUTOFF:
        if f == "explicit":
            log_weight(spec, n)  # range check
            return float(spec.values[n])
        if f == "factorial_inv_shift":
            return 1.0 / math.factorial(n - 1)
        if f == "factorial_inv":
            return 1.0 / math.factorial(n)
        if f == "standard_factorial":
            return float(math.factorial(n))
        return float(math.factorial(n)) ** spec.sigma * 2.0 ** (spec.rho * n) * (1.0 + n) ** spec.s
    return math.exp(log_weight(spec, n))


# ----------------------------------------------------------------------------------
# composite norms
# ----------------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class NormSpec:
    """Weighted norm ``||a||^2 = sum_n w_n ||Gamma(A)**r a_n||_n^2``.

    ``twist`` is an optional positive operator ``A >= 2 id`` on the
    generators with exponent ``twist_exponent`` (``r``).  With a twist the
    ``2**(rho n)`` factor of a ``sigma_rho_s`` family is dropped; the twist
    takes its place.
    """

    weights: WeightSpec
    gram: Gram = Gram.NORMALIZED
    twist: Optional[GammaOperator] = None
    twist_exponent: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "gram", Gram(self.gram))
        if self.twist is not None:
            if not self.twist.has_spectral_form:
                raise ValueError("twist operator must be Hermitian with a spectral form")
            if self.twist.min_eigenvalue() < 2 - 1e-12:
                raise ValueError("twist operator needs lower bound A >= 2 id")

    @property
    def effective_weights(self) -> WeightSpec:
        w = self.weights
        if self.twist is not None and w.family == "sigma_rho_s" and w.rho != 0:
            return WeightSpec.sigma_rho_s(w.sigma, 0.0, w.s)
        return w

    def weight(self, n: int) -> float:
        return weight(self.effective_weights, n)

    def _twisted(self, a: GradedElement) -> GradedElement:
        if self.twist is None:
            return a
        return gamma_power_apply(self.twist, self.twist_exponent, a)

    def inner(self, a: GradedElement, b: GradedElement):
        if a.truncated or b.truncated:
            raise TruncationError("cannot measure a truncation-flagged element")
        if a.spec != b.spec:
            raise ValueError("operands belong to different algebras")
        a, b = self._twisted(a), self._twisted(b)
        total = 0
        for w, x in a:
            y = b.coefficient(w)
            if y:
                total += self.weight(len(w)) * monomial_gram(a.spec, w, self.gram) * x.conjugate() * y
        return total

    def norm(self, a: GradedElement) -> float:
        return math.sqrt(max(float(np.real(self.inner(a, a))), 0.0))

    def coordinate_map(self, spec: AlgebraSpec, words: Sequence[tuple]):
        """Map monomial coefficients to coordinates in which this norm is Euclidean.

        Returns a 1-D scale vector (diagonal map) or a dense matrix when a
        non-diagonal twist is present.
        """
        scale = np.array([math.sqrt(self.weight(len(w)) * monomial_gram(spec, w, self.gram)) for w in words])
        if self.twist is None:
            return scale
        G = self.twist.power(self.twist_exponent)
        if G.diagonal:
            lam = np.array([float(G.matrix[i, i]) for i in range(G.d)])
            return scale * np.array([np.prod(lam[[i - 1 for i in w]]) if w else 1.0 for w in words])
        cols = [to_vector(gamma_apply(G, GradedElement(spec, {w: 1.0})), words, dtype=complex) for w in words]
        M = np.array(cols).T
        if np.abs(M.imag).max() == 0:
            M = M.real
        return scale[:, None] * M

    def to_json(self) -> dict:
        out = self.weights.to_json()
        out["gram"] = self.gram.value
        if self.twist is not None:
            if self.twist.diagonal:
                out["gamma_diag"] = [float(self.twist.matrix[i, i]) for i in range(self.twist.d)]
            else:
                out["gamma_matrix"] = np.real_if_close(self.twist.matrix).tolist()
            out["gamma_exponent"] = self.twist_exponent
        return out


class GramMatrixNorm:
    """Inner product given by an explicit Hermitian positive-definite Gram matrix.

    Lets the analysis routines run on inner products that are not graded
    (degrees need not be orthogonal).  ``words`` lists the basis monomials
    the matrix refers to; ``gram[i, j] = (M_i | M_j)``.
    """

    def __init__(self, spec: AlgebraSpec, words, gram):
        self.spec = spec
        self.words = [tuple(w) for w in words]
        self.gram = np.asarray(gram)
        if self.gram.shape != (len(self.words), len(self.words)):
            raise ValueError("gram matrix does not match the word list")
        if not np.allclose(self.gram, self.gram.conj().T):
            raise ValueError("gram matrix must be Hermitian")
        if np.linalg.eigvalsh(self.gram).min() <= 0:
            raise ValueError("gram matrix must be positive definite")
        if () in self.words and abs(self.gram[self.words.index(()), self.words.index(())] - 1) > 1e-12:
            raise ValueError("the unit must have norm 1")

    def inner(self, a: GradedElement, b: GradedElement):
        if a.truncated or b.truncated:
            raise TruncationError("cannot measure a truncation-flagged element")
        va = to_vector(a, self.words, dtype=complex)
        vb = to_vector(b, self.words, dtype=complex)
        z = va.conj() @ self.gram @ vb
        return z.real if z.imag == 0 else z

    def norm(self, a: GradedElement) -> float:
        return math.sqrt(max(float(np.real(self.inner(a, a))), 0.0))

    def to_json(self) -> dict:
        return {"gram_matrix": np.real_if_close(self.gram).tolist(), "words": [list(w) for w in self.words]}


def inner(a: GradedElement, b: GradedElement, nspec):
    return nspec.inner(a, b)


def norm(a: GradedElement, nspec) -> float:
    return nspec.norm(a)
