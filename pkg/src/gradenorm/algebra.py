"""Finite-dimensional graded algebras on a generator-product monomial basis.

Every algebra is truncated at a total degree ``N``.  Basis elements are
canonical words over the generator indices ``1..d``::

    tensor         arbitrary sequence
    symmetric      non-decreasing multiset
    antisymmetric  strictly increasing set
    super          even letters (sorted multiset) followed by odd letters (set)
    paired         carrier of its parity: set for chi=1, multiset for chi=0

The empty word is the unit ``e0``.  Elements are sparse maps word -> scalar.
Coefficients may be ``int``, ``float``, ``complex`` or ``fractions.Fraction``;
with Fraction coefficients (and Fraction pairings) all arithmetic is exact.
"""

from __future__ import annotations

import bisect
import cmath
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, product
from numbers import Number
from types import MappingProxyType
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np
import scipy.sparse as sp

Word = tuple


class Kind(str, Enum):
    TENSOR = "tensor"
    SYMMETRIC = "symmetric"
    ANTISYMMETRIC = "antisymmetric"
    SUPER = "super"
    PAIRED = "paired"


CLASS1_KINDS = (Kind.TENSOR, Kind.SYMMETRIC, Kind.ANTISYMMETRIC, Kind.SUPER)


class SpecMismatchError(ValueError):
    """Operands belong to different algebras."""


class TruncationError(ValueError):
    """An exact result would need terms above the truncation degree."""


def _freeze_matrix(m):
    if m is None:
        return None
    rows = [tuple(_plain(x) for x in row) for row in m]
    return tuple(rows)


def _plain(x):
    # numpy scalars -> python scalars so specs stay hashable and exact types survive
    if isinstance(x, np.generic):
        return x.item()
    return x


@dataclass(frozen=True)
class AlgebraSpec:
    """Static description of a truncated graded algebra.

    ``chi`` is only meaningful for the paired kind (0 symmetric carrier,
    1 antisymmetric carrier).  ``omega`` is the bilinear pairing of the
    paired kind, stored as a tuple of rows; ``omega[i-1][j-1]`` is
    omega(e_i, e_j).  For the super kind generators ``1..even_count`` are
    even and the rest odd.
    """

    kind: Kind
    d: int
    N: int
    chi: int = 0
    omega: Optional[tuple] = None
    even_count: int = 0
    field: str = "real"

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(str(self.kind).lower() if not isinstance(self.kind, Kind) else self.kind))
        object.__setattr__(self, "omega", _freeze_matrix(self.omega))
        if self.d < 1:
            raise ValueError("generator count d must be >= 1")
        if self.N < 0:
            raise ValueError("truncation degree N must be >= 0")
        if self.field not in ("real", "complex"):
            raise ValueError(f"unknown scalar field {self.field!r}")
        if self.chi not in (0, 1):
            raise ValueError("parity chi must be 0 or 1")
        if self.kind is Kind.PAIRED:
            if self.omega is None:
                raise ValueError("paired kind requires a pairing omega")
            if len(self.omega) != self.d or any(len(r) != self.d for r in self.omega):
                raise ValueError("omega must be a d x d matrix")
            if self.field == "real" and any(isinstance(x, complex) and x.imag for r in self.omega for x in r):
                raise ValueError("complex pairing on a real algebra")
        elif self.omega is not None:
            raise ValueError("omega is only allowed for the paired kind")
        if self.kind is Kind.SUPER:
            if not 0 <= self.even_count <= self.d:
                raise ValueError("even_count must lie in 0..d")
        elif self.even_count:
            raise ValueError("even_count is only allowed for the super kind")

    # -- convenience constructors -------------------------------------------------
    @classmethod
    def tensor(cls, d, N, field="real"):
        return cls(Kind.TENSOR, d, N, field=field)

    @classmethod
    def symmetric(cls, d, N, field="real"):
        return cls(Kind.SYMMETRIC, d, N, field=field)

    @classmethod
    def grassmann(cls, d, N=None, field="real"):
        return cls(Kind.ANTISYMMETRIC, d, d if N is None else N, field=field)

    @classmethod
    def superalgebra(cls, d, N, even_count, field="real"):
        return cls(Kind.SUPER, d, N, even_count=even_count, field=field)

    @classmethod
    def paired(cls, d, N, omega, chi, field="real"):
        return cls(Kind.PAIRED, d, N, chi=chi, omega=omega, field=field)

    @classmethod
    def clifford(cls, d, N=None, omega=None, field="real"):
        if omega is None:
            omega = np.eye(d)
        return cls(Kind.PAIRED, d, d if N is None else N, chi=1, omega=omega, field=field)

    # -- sign bookkeeping -----------------------------------------------------------
    @property
    def carrier(self) -> Kind:
        """The class-1 kind whose canonical words this algebra uses."""
        if self.kind is Kind.PAIRED:
            return Kind.ANTISYMMETRIC if self.chi else Kind.SYMMETRIC
        return self.kind

    def is_odd(self, i: int) -> bool:
        c = self.carrier
        if c is Kind.ANTISYMMETRIC:
            return True
        if c is Kind.SUPER:
            return i > self.even_count
        return False

    def parity(self, word) -> int:
        """Z2 parity of a monomial: number of odd letters mod 2."""
        return sum(1 for i in word if self.is_odd(i)) % 2

    def to_json(self) -> dict:
        out = {"kind": self.kind.value, "d": self.d, "N": self.N, "field": self.field}
        if self.kind is Kind.PAIRED:
            out["chi"] = self.chi
            out["omega"] = [[_json_scalar(x) for x in row] for row in self.omega]
        if self.kind is Kind.SUPER:
            out["even_count"] = self.even_count
        return out


def _json_scalar(x):
    if isinstance(x, complex):
        return [x.real, x.imag] if x.imag else x.real
    if isinstance(x, int):
        return x
    return float(x)


# ----------------------------------------------------------------------------------
# canonical words
# ----------------------------------------------------------------------------------

def canonicalize(spec: AlgebraSpec, word: Sequence[int]):
    """Return ``(sign, canonical_word)`` or ``None`` when the word vanishes."""
    word = tuple(int(i) for i in word)
    for i in word:
        if not 1 <= i <= spec.d:
            raise IndexError(f"generator index {i} outside 1..{spec.d}")
    c = spec.carrier
    if c is Kind.TENSOR:
        return 1, word
    if c is Kind.SYMMETRIC:
        return 1, tuple(sorted(word))
    odd = [i for i in word if spec.is_odd(i)]
    if len(set(odd)) != len(odd):
        return None
    inversions = sum(1 for x, y in combinations(odd, 2) if x > y)
    return (-1 if inversions % 2 else 1), tuple(sorted(word))


def _concat(spec: AlgebraSpec, I: Word, J: Word):
    """Class-1 product of two canonical words: ``(sign, word)`` or ``None``."""
    c = spec.carrier
    if c is Kind.TENSOR:
        return 1, I + J
    if c is Kind.SYMMETRIC:
        return 1, tuple(sorted(I + J))
    if c is Kind.ANTISYMMETRIC:
        if not I or not J:
            return 1, I + J
        if set(I) & set(J):
            return None
        crossings = sum(bisect.bisect_left(J, x) for x in I)
        return (-1 if crossings % 2 else 1), tuple(sorted(I + J))
    # super: only odd-odd transpositions carry a sign
    e = spec.even_count
    I_odd = [x for x in I if x > e]
    J_odd = [x for x in J if x > e]
    if set(I_odd) & set(J_odd):
        return None
    crossings = sum(bisect.bisect_left(J_odd, x) for x in I_odd)
    return (-1 if crossings % 2 else 1), tuple(sorted(I + J))


# ----------------------------------------------------------------------------------
# elements
# ----------------------------------------------------------------------------------

class GradedElement:
    """Immutable sparse element of a truncated graded algebra.

    ``truncated`` is set when a product producing this element dropped
    non-zero terms above degree ``N``; such elements are not exact and the
    norm and analysis routines refuse them.
    """

    __slots__ = ("spec", "_terms", "truncated")

    def __init__(self, spec: AlgebraSpec, terms: Mapping = (), truncated: bool = False):
        clean = {}
        for w, c in dict(terms).items():
            if c != 0:
                clean[tuple(w)] = c
        for w in clean:
            if len(w) > spec.N:
                raise TruncationError(f"degree {len(w)} exceeds truncation {spec.N}")
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "truncated", bool(truncated))

    def __setattr__(self, name, value):
        raise AttributeError("GradedElement is immutable")

    @property
    def terms(self) -> Mapping:
        return MappingProxyType(self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def coefficient(self, word) -> Number:
        return self._terms.get(tuple(word), 0)

    @property
    def degrees(self) -> set:
        return {len(w) for w in self._terms}

    @property
    def max_degree(self) -> int:
        return max((len(w) for w in self._terms), default=0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_homogeneous(self) -> bool:
        return len(self.degrees) <= 1

    def scalar_part(self):
        return self._terms.get((), 0)

    # -- arithmetic --------------------------------------------------------------------
    def _check(self, other):
        if not isinstance(other, GradedElement):
            return NotImplemented
        if other.spec != self.spec:
            raise SpecMismatchError("operands belong to different algebras")
        return other

    def __add__(self, other):
        if isinstance(other, Number):
            other = unit(self.spec) * other
        if self._check(other) is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for w, c in other._terms.items():
            out[w] = out.get(w, 0) + c
        return GradedElement(self.spec, out, self.truncated or other.truncated)

    __radd__ = __add__

    def __neg__(self):
        return GradedElement(self.spec, {w: -c for w, c in self._terms.items()}, self.truncated)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, GradedElement):
            return product_(self, other)
        if isinstance(other, Number):
            return GradedElement(self.spec, {w: c * other for w, c in self._terms.items()}, self.truncated)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Number):
            return GradedElement(self.spec, {w: other * c for w, c in self._terms.items()}, self.truncated)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, Number):
            return GradedElement(self.spec, {w: c / other for w, c in self._terms.items()}, self.truncated)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, Number):
            other = unit(self.spec) * other
        if not isinstance(other, GradedElement):
            return NotImplemented
        return self.spec == other.spec and self._terms == other._terms

    def __hash__(self):
        return hash((self.spec, frozenset(self._terms.items())))

    def conjugate(self):
        return GradedElement(self.spec, {w: c.conjugate() for w, c in self._terms.items()}, self.truncated)

    def max_abs_coefficient(self) -> float:
        return max((abs(c) for c in self._terms.values()), default=0.0)

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for w, c in sorted(self._terms.items(), key=lambda t: (len(t[0]), t[0])):
            name = "e0" if not w else "e(" + ",".join(map(str, w)) + ")"
            parts.append(f"{c!r}*{name}")
        flag = " [truncated]" if self.truncated else ""
        return " + ".join(parts) + flag

    # -- serialization -----------------------------------------------------------------
    def to_json(self) -> list:
        out = []
        for w, c in sorted(self._terms.items(), key=lambda t: (len(t[0]), t[0])):
            z = complex(c)
            out.append({"word": list(w), "re": z.real, "im": z.imag})
        return out

    @classmethod
    def from_json(cls, spec: AlgebraSpec, data: Iterable[Mapping]) -> "GradedElement":
        terms = {}
        for item in data:
            c = item.get("re", 0.0)
            if item.get("im", 0.0):
                c = complex(c, item["im"])
            terms[tuple(item["word"])] = c
        return element(spec, terms)


def _check_scalar(spec, c):
    c = _plain(c)
    if isinstance(c, complex):
        if spec.field == "real":
            if c.imag:
                raise ValueError("complex coefficient in a real algebra")
            return c.real
    return c


def unit(spec: AlgebraSpec) -> GradedElement:
    """The unit e0 (empty word, coefficient 1)."""
    return GradedElement(spec, {(): 1})


def zero(spec: AlgebraSpec) -> GradedElement:
    return GradedElement(spec)


def monomial(spec: AlgebraSpec, word: Sequence[int], coefficient=1) -> GradedElement:
    """Generator product ``e_{w1} o ... o e_{wn}`` brought to canonical form.

    >>> g = AlgebraSpec.grassmann(2)
    >>> monomial(g, (2, 1))
    -1*e(1,2)
    """
    if len(word) > spec.N:
        raise TruncationError(f"word of length {len(word)} exceeds truncation degree {spec.N}")
    r = canonicalize(spec, word)
    if r is None:
        return zero(spec)
    sign, w = r
    return GradedElement(spec, {w: sign * _check_scalar(spec, coefficient)})


def generator(spec: AlgebraSpec, i: int) -> GradedElement:
    return monomial(spec, (i,))


def element(spec: AlgebraSpec, terms: Mapping) -> GradedElement:
    """Build an element from ``{word: coefficient}`` with arbitrary word order."""
    out = zero(spec)
    for w, c in dict(terms).items():
        out = out + monomial(spec, w, c)
    return out


def vector_element(spec: AlgebraSpec, coeffs: Sequence) -> GradedElement:
    """Degree-1 element ``sum_i coeffs[i] e_{i+1}``."""
    if len(coeffs) != spec.d:
        raise ValueError("need one coefficient per generator")
    return GradedElement(spec, {(i + 1,): _check_scalar(spec, c) for i, c in enumerate(coeffs)})


# ----------------------------------------------------------------------------------
# products
# ----------------------------------------------------------------------------------

def _same_spec(a, b):
    if not isinstance(a, GradedElement) or not isinstance(b, GradedElement):
        raise TypeError("expected GradedElement operands")
    if a.spec != b.spec:
        raise SpecMismatchError("operands belong to different algebras")
    return a.spec


def mul(a: GradedElement, b: GradedElement) -> GradedElement:
    """Class-1 product (tensor, symmetric, antisymmetric, super).

    Terms above the truncation degree are dropped and flagged on the result.
    """
    spec = _same_spec(a, b)
    if spec.kind not in CLASS1_KINDS:
        raise ValueError(f"mul is for class-1 kinds, got {spec.kind.value}; use mul_twisted")
    out = {}
    truncated = a.truncated or b.truncated
    for I, x in a._terms.items():
        for J, y in b._terms.items():
            r = _concat(spec, I, J)
            if r is None:
                continue
            sign, w = r
            if len(w) > spec.N:
                truncated = True
                continue
            v = x * y
            out[w] = out.get(w, 0) + (v if sign > 0 else -v)
    return GradedElement(spec, out, truncated)


def _left_generator(spec: AlgebraSpec, i: int, terms: Mapping) -> dict:
    # e_i o M_J = (class-1 union) + sum_k (-1)^(chi (k-1)) omega(e_i, e_jk) M_{J \ jk}
    out = {}
    row = spec.omega[i - 1]
    for J, c in terms.items():
        r = _concat(spec, (i,), J)
        if r is not None:
            sign, w = r
            out[w] = out.get(w, 0) + (c if sign > 0 else -c)
        for k, j in enumerate(J):
            om = row[j - 1]
            if om == 0:
                continue
            v = om * c
            if spec.chi and k % 2:
                v = -v
            w = J[:k] + J[k + 1:]
            out[w] = out.get(w, 0) + v
    return out


@lru_cache(maxsize=1 << 18)
def _paired_monomial_product(spec: AlgebraSpec, I: Word, J: Word) -> tuple:
    # M_I = e_i1 (class-1) M_I'  =>  L(M_I) = L(e_i1) L(M_I') - L(contraction of M_I' by e_i1)
    if not I:
        return ((J, 1),)
    i1, rest = I[0], I[1:]
    out = _left_generator(spec, i1, dict(_paired_monomial_product(spec, rest, J)))
    row = spec.omega[i1 - 1]
    for k, j in enumerate(rest):
        om = row[j - 1]
        if om == 0:
            continue
        if spec.chi and k % 2:
            om = -om
        for w, c in _paired_monomial_product(spec, rest[:k] + rest[k + 1:], J):
            out[w] = out.get(w, 0) - om * c
    return tuple((w, c) for w, c in out.items() if c != 0)


def mul_twisted(a: GradedElement, b: GradedElement) -> GradedElement:
    """Product of the paired (class-2) kind.

    Determined by ``e_i o e_j = (class-1 product) + omega(e_i, e_j) e0`` and
    associativity; computed by iterated left multiplication with single
    generators.  Intermediate results are exact; only the final result is
    truncated at degree ``N``.
    """
    spec = _same_spec(a, b)
    if spec.kind is not Kind.PAIRED:
        raise ValueError("mul_twisted requires the paired kind")
    out = {}
    truncated = a.truncated or b.truncated
    for I, x in a._terms.items():
        for J, y in b._terms.items():
            xy = x * y
            for w, c in _paired_monomial_product(spec, I, J):
                if len(w) > spec.N:
                    truncated = True
                    continue
                out[w] = out.get(w, 0) + c * xy
    return GradedElement(spec, out, truncated)


def product_(a: GradedElement, b: GradedElement) -> GradedElement:
    """Algebra product, dispatching on the kind."""
    if a.spec.kind is Kind.PAIRED:
        return mul_twisted(a, b)
    return mul(a, b)


def monomial_product(spec: AlgebraSpec, I: Word, J: Word) -> tuple:
    """Untruncated product of two canonical basis words as ``((word, coeff), ...)``."""
    if spec.kind is Kind.PAIRED:
        return _paired_monomial_product(spec, tuple(I), tuple(J))
    r = _concat(spec, tuple(I), tuple(J))
    if r is None:
        return ()
    return ((r[1], r[0]),)


def project_degree(a: GradedElement, n: int) -> GradedElement:
    """Homogeneous degree-``n`` component of ``a``."""
    if not 0 <= n <= a.spec.N:
        raise ValueError(f"degree {n} outside 0..{a.spec.N}")
    return GradedElement(a.spec, {w: c for w, c in a._terms.items() if len(w) == n}, a.truncated)


def power(a: GradedElement, k: int) -> GradedElement:
    out = unit(a.spec)
    for _ in range(k):
        out = out * a
    return out


# ----------------------------------------------------------------------------------
# no-go direction
# ----------------------------------------------------------------------------------

def find_nogo_witness(spec: AlgebraSpec) -> Optional[GradedElement]:
    """A degree-1 direction f with (e0|f) = (f|f^2) = 0 and (e0|f^2) >= 0.

    For class-1 kinds any generator works.  For the paired kind the scalar
    part of f o f is omega(f, f); over the reals we take the top eigenvector
    of the symmetric part of omega (``None`` if that part is negative
    definite), over the complexes a phase rotation of e_1.
    """
    if spec.kind in CLASS1_KINDS:
        return generator(spec, 1)
    om = np.array(spec.omega, dtype=complex if spec.field == "complex" else float)
    if spec.field == "complex":
        z = complex(spec.omega[0][0])
        theta = 0.0 if z == 0 else (-cmath.phase(z) / 2) % math.pi
        phase = cmath.exp(1j * theta)
        if abs(phase.real) < 1e-15:
            phase = complex(0.0, round(phase.imag))
        elif abs(phase.imag) < 1e-15:
            phase = complex(round(phase.real), 0.0)
        return GradedElement(spec, {(1,): phase})
    sym = 0.5 * (om + om.T)
    vals, vecs = np.linalg.eigh(sym)
    if vals[-1] < 0:
        return None
    v = vecs[:, -1]
    if v[np.argmax(np.abs(v))] < 0:
        v = -v
    return vector_element(spec, [float(x) for x in v])


# ----------------------------------------------------------------------------------
# bases and vectorized structure constants
# ----------------------------------------------------------------------------------

def degree_basis(spec: AlgebraSpec, n: int) -> list:
    """Canonical words of degree ``n`` in lexicographic order."""
    gens = range(1, spec.d + 1)
    c = spec.carrier
    if c is Kind.TENSOR:
        return [tuple(w) for w in product(gens, repeat=n)]
    if c is Kind.SYMMETRIC:
        return list(combinations_with_replacement(gens, n))
    if c is Kind.ANTISYMMETRIC:
        return list(combinations(gens, n))
    e = spec.even_count
    words = []
    for k in range(n + 1):
        for ev in combinations_with_replacement(range(1, e + 1), k):
            for od in combinations(range(e + 1, spec.d + 1), n - k):
                words.append(ev + od)
    return sorted(words)


def basis(spec: AlgebraSpec, max_degree: Optional[int] = None) -> list:
    """All canonical words of degree ``<= max_degree`` (default ``N``), by degree."""
    top = spec.N if max_degree is None else min(max_degree, spec.N)
    out = []
    for n in range(top + 1):
        out.extend(degree_basis(spec, n))
    return out


def to_vector(a: GradedElement, words: Sequence[Word], dtype=None) -> np.ndarray:
    index = {w: k for k, w in enumerate(words)}
    if dtype is None:
        dtype = complex if any(isinstance(c, complex) for c in a._terms.values()) else float
    v = np.zeros(len(words), dtype=dtype)
    for w, c in a._terms.items():
        v[index[w]] = c
    return v


def from_vector(spec: AlgebraSpec, words: Sequence[Word], vec) -> GradedElement:
    terms = {}
    for w, c in zip(words, vec):
        c = _plain(c)
        if isinstance(c, complex) and not c.imag:
            c = c.real
        terms[w] = c
    return GradedElement(spec, terms)


def structure_matrix(spec: AlgebraSpec, left: Sequence[Word], right: Sequence[Word],
                     out: Sequence[Word], dtype=float) -> sp.csr_matrix:
    """Sparse matrix S with ``vec(a o b) = S @ kron(vec(a), vec(b))``.

    Rows index ``out``, columns the pairs ``(i, j)`` as ``i * len(right) + j``.
    Product terms whose word is not in ``out`` are dropped (truncation).
    """
    index = {w: k for k, w in enumerate(out)}
    rows, cols, vals = [], [], []
    nr = len(right)
    for i, I in enumerate(left):
        for j, J in enumerate(right):
            for w, c in monomial_product(spec, I, J):
                k = index.get(w)
                if k is None:
                    continue
                rows.append(k)
                cols.append(i * nr + j)
                vals.append(complex(c) if dtype is complex else float(c))
    return sp.csr_matrix((np.array(vals, dtype=dtype), (rows, cols)),
                         shape=(len(out), len(left) * nr))
