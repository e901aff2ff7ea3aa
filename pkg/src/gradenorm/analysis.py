"""Certify and falsify product estimates ``||a o b|| <= gamma ||a|| ||b||``.

* :func:`theorem1_sweep` / :func:`nilpotent_witness` build explicit pairs
  ``a = b = e0 + lam f`` whose ratio cannot go below ``sqrt(4/3)``.
* :func:`delta_audit` evaluates the weight inequality
  ``(p+q-1) w_{p+q} <= delta w_p w_q`` on a grid.
* :func:`ratio_sample` draws random pairs and records the observed ratios.
* :func:`best_constant` computes the largest singular value of the
  multiplication map in orthonormal coordinates.
* :func:`unweighted_violation_search` looks for pairs with ratio above 1.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np
import scipy.sparse as sp
from scipy.optimize import minimize_scalar

from .algebra import (
    AlgebraSpec,
    GradedElement,
    Kind,
    TruncationError,
    basis,
    degree_basis,
    find_nogo_witness,
    from_vector,
    structure_matrix,
    to_vector,
    unit,
)
from .norms import Gram, NormSpec, WeightSpec, log_weight, monomial_gram, weight

SQRT3 = math.sqrt(3.0)
SQRT4_3 = math.sqrt(4.0 / 3.0)
HYPOTHESIS_TOL = 1e-12
CONSTANT_TOL = 1e-9


class HypothesisError(ValueError):
    """The assumptions of the witness construction do not hold."""


class ConvergenceError(RuntimeError):
    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class NoViolationFound(RuntimeError):
    def __init__(self, message, best_ratio, report=None):
        super().__init__(message)
        self.best_ratio = best_ratio
        self.report = report


def _norm_json(n):
    return n.to_json() if hasattr(n, "to_json") else repr(n)


@dataclass
class WitnessReport:
    """An explicit pair and its product ratio.

    ``ratio`` is measured through the algebra and the norms,
    ``closed_form_ratio`` comes from the analytic formula of the construction.
    """

    a: GradedElement
    b: GradedElement
    ratio: float
    closed_form_ratio: float
    lambda_star: Optional[float]
    norms: tuple
    construction: str
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "construction": self.construction,
            "a": self.a.to_json(),
            "b": self.b.to_json(),
            "ratio": self.ratio,
            "closed_form_ratio": self.closed_form_ratio,
            "lambda_star": self.lambda_star,
            "details": self.details,
        }


def product_ratio(a, b, n_sigma, n_tau=None, n_rho=None) -> float:
    """``||a o b||_rho / (||a||_sigma ||b||_tau)``."""
    n_tau = n_sigma if n_tau is None else n_tau
    n_rho = n_sigma if n_rho is None else n_rho
    ab = a * b
    if ab.truncated:
        raise TruncationError("a o b exceeds the truncation degree")
    return n_rho.norm(ab) / (n_sigma.norm(a) * n_tau.norm(b))


# ----------------------------------------------------------------------------------
# no-go witnesses
# ----------------------------------------------------------------------------------

def _quartic_ratio_sq(t, c1, c2):
    # ||(e0 + lam f)^2||^2 / ||e0 + lam f||^4 with t = lam^2
    return (1.0 + (4.0 + 2.0 * c1) * t + c2 * t * t) / (1.0 + t) ** 2


def theorem1_sweep(spec: AlgebraSpec, nspec, f: Optional[GradedElement] = None) -> WitnessReport:
    """Maximize the ratio of ``a = b = e0 + lam f`` over ``lam >= 0``.

    ``f`` defaults to :func:`find_nogo_witness`.  It is rescaled to unit norm;
    ``(e0|f) = (f|f^2) = 0`` and ``(e0|f^2) >= 0`` are checked to 1e-12.
    With ``c1 = (e0|f^2)`` and ``c2 = ||f^2||^2`` the squared ratio is
    ``(1 + (4 + 2 c1) t + c2 t^2) / (1 + t)^2`` in ``t = lam^2``, whose
    supremum is never below 4/3.
    """
    if f is None:
        f = find_nogo_witness(spec)
        if f is None:
            raise HypothesisError("no direction with omega(f, f) >= 0 exists")
    if f.spec != spec:
        raise ValueError("f does not belong to this algebra")
    nf = nspec.norm(f)
    if nf == 0:
        raise HypothesisError("f must be non-zero")
    f = f / nf
    e0 = unit(spec)
    f2 = f * f
    if f2.truncated:
        raise TruncationError("truncation degree too small to represent f o f")
    h1 = nspec.inner(e0, f)
    h2 = nspec.inner(f, f2)
    c1 = complex(nspec.inner(e0, f2))
    if abs(h1) > HYPOTHESIS_TOL or abs(h2) > HYPOTHESIS_TOL:
        raise HypothesisError(f"need (e0|f) = (f|f^2) = 0, got {complex(h1):.3g}, {complex(h2):.3g}")
    if abs(c1.imag) > HYPOTHESIS_TOL or c1.real < -HYPOTHESIS_TOL:
        raise HypothesisError(f"need (e0|f^2) >= 0, got {c1:.3g}")
    c1 = max(c1.real, 0.0)
    c2 = nspec.norm(f2) ** 2

    beta = 4.0 + 2.0 * c1
    if beta - 2.0 * c2 > 0:
        t_star = (beta - 2.0) / (beta - 2.0 * c2)
    else:
        # ratio increases towards sqrt(c2) >= sqrt(2); any large lam will do
        t_star = 1e6
    # golden-section guard on the same closed form
    res = minimize_scalar(lambda lam: -_quartic_ratio_sq(lam * lam, c1, c2),
                          bracket=(0.0, 1.0), method="golden")
    if res.success and res.x >= 0 and -res.fun > _quartic_ratio_sq(t_star, c1, c2) + 1e-12 and abs(res.x) < 1e3:
        t_star = res.x * res.x
    lam = math.sqrt(t_star)
    closed = math.sqrt(_quartic_ratio_sq(t_star, c1, c2))
    a = e0 + lam * f
    measured = product_ratio(a, a, nspec)
    if abs(measured - closed) > CONSTANT_TOL * max(1.0, closed):
        raise HypothesisError(f"measured ratio {measured!r} disagrees with closed form {closed!r}")
    return WitnessReport(a, a, measured, closed, lam, (nspec,), "no_go",
                         {"c1": c1, "c2": c2, "f": f.to_json()})


def nilpotent_witness(spec: AlgebraSpec, nspec, f: GradedElement) -> WitnessReport:
    """Witness built from a nilpotent ``f`` (``f o f = 0``).

    If ``Re(e0|f) = 0`` this is :func:`theorem1_sweep`; otherwise
    ``lam = -2 Re(e0|f)`` gives ``||a||= 1`` and ``||a^2||^2 = 1 + 8 Re(e0|f)^2``.
    """
    f2 = f * f
    if f2.truncated or not f2.is_zero():
        raise ValueError("f is not nilpotent (f o f != 0)")
    nf = nspec.norm(f)
    if nf == 0:
        raise HypothesisError("f must be non-zero")
    f = f / nf
    e0 = unit(spec)
    c = float(np.real(nspec.inner(e0, f)))
    if abs(c) <= HYPOTHESIS_TOL:
        rep = theorem1_sweep(spec, nspec, f)
        rep.construction = "nilpotent"
        return rep
    lam = -2.0 * c
    a = e0 + lam * f
    measured = product_ratio(a, a, nspec)
    closed = math.sqrt(1.0 + 8.0 * c * c)
    return WitnessReport(a, a, measured, closed, lam, (nspec,), "nilpotent",
                         {"re_e0_f": c, "f": f.to_json()})


# ----------------------------------------------------------------------------------
# weight audit
# ----------------------------------------------------------------------------------

@dataclass
class AuditReport:
    grid: int
    delta_min: float
    argmax: tuple
    target_gamma: float
    gamma_bound: float
    passed: bool

    def to_json(self) -> dict:
        return {
            "grid": self.grid,
            "delta_min": self.delta_min,
            "argmax": list(self.argmax),
            "target_gamma": self.target_gamma,
            "gamma_bound": self.gamma_bound,
            "pass": self.passed,
        }


def delta_audit(w_sigma: WeightSpec, w_tau: Optional[WeightSpec] = None, w_rho: Optional[WeightSpec] = None,
                P: int = 50, target_gamma: float = SQRT3, tol: float = CONSTANT_TOL) -> AuditReport:
    """Smallest ``delta`` with ``(p+q-1) w_{p+q}(rho) <= delta w_p(sigma) w_q(tau)`` on ``1 <= p, q <= P``.

    Comparisons run in log space; values within 1e-12 of the maximum count as
    ties, broken by smallest ``p+q`` then smallest ``p``.  The report passes
    when ``sqrt(3) max(1, delta) <= target_gamma``.
    """
    if P < 1:
        raise ValueError("grid bound must be >= 1")
    w_tau = w_sigma if w_tau is None else w_tau
    w_rho = w_sigma if w_rho is None else w_rho
    ls = [log_weight(w_sigma, n) for n in range(P + 1)]
    lt = [log_weight(w_tau, n) for n in range(P + 1)]
    lr = [log_weight(w_rho, n) for n in range(2 * P + 1)]
    p = np.arange(1, P + 1)[:, None]
    q = np.arange(1, P + 1)[None, :]
    L = np.log(p + q - 1.0) + np.array(lr)[p + q] - np.array(ls)[p] - np.array(lt)[q]
    top = L.max()
    ties = np.argwhere(L >= top - 1e-12 * max(1.0, abs(top)))
    pi, qi = min(((int(i) + 1, int(j) + 1) for i, j in ties), key=lambda t: (t[0] + t[1], t[0]))
    ws, wt, wr = weight(w_sigma, pi), weight(w_tau, qi), weight(w_rho, pi + qi)
    if all(math.isfinite(x) and x > 0 for x in (ws, wt, wr)):
        delta = (pi + qi - 1) * wr / (ws * wt)
    else:
        delta = math.exp(L[pi - 1, qi - 1])
    bound = SQRT3 * max(1.0, delta)
    return AuditReport(P, delta, (pi, qi), target_gamma, bound, bound <= target_gamma + tol)


# ----------------------------------------------------------------------------------
# vectorized coordinates
# ----------------------------------------------------------------------------------

class _Coordinates:
    """Orthonormal coordinates of one norm on a degree-sorted basis."""

    def __init__(self, nspec, spec, words):
        if not isinstance(nspec, NormSpec):
            raise TypeError("vectorized analysis needs a graded NormSpec")
        R = nspec.coordinate_map(spec, words)
        self.diagonal = R.ndim == 1
        self.R = R
        self.Rinv = 1.0 / R if self.diagonal else np.linalg.inv(R)

    def forward(self, C, m=None):
        # rows of C are monomial coefficient vectors on the first m words
        if self.diagonal:
            return C * self.R[:m]
        return C @ self.R[:m, :m].T

    def backward(self, X, m=None):
        if self.diagonal:
            return X * self.Rinv[:m]
        return X @ self.Rinv[:m, :m].T

    def matrix(self, m=None):
        if self.diagonal:
            return sp.diags(self.R[:m])
        return sp.csr_matrix(self.R[:m, :m])

    def inverse_matrix(self, m=None):
        if self.diagonal:
            return sp.diags(self.Rinv[:m])
        return sp.csr_matrix(self.Rinv[:m, :m])


def _degree_offsets(spec, words):
    # number of words of degree <= n, for n = 0..N
    out = []
    for n in range(spec.N + 1):
        out.append(sum(1 for w in words if len(w) <= n))
    return out


# ----------------------------------------------------------------------------------
# random sampling
# ----------------------------------------------------------------------------------

@dataclass
class SampleReport:
    count: int
    seed: int
    max_ratio: float
    argmax_trial: int
    a: GradedElement
    b: GradedElement
    quantiles: dict
    ratios: np.ndarray
    degree_a: np.ndarray
    degree_b: np.ndarray

    def to_json(self) -> dict:
        return {
            "count": self.count,
            "seed": self.seed,
            "max_ratio": self.max_ratio,
            "argmax": {"trial": self.argmax_trial, "a": self.a.to_json(), "b": self.b.to_json(),
                       "degree_a": int(self.degree_a[self.argmax_trial]),
                       "degree_b": int(self.degree_b[self.argmax_trial])},
            "quantiles": {str(k): v for k, v in self.quantiles.items()},
        }

    def csv_rows(self):
        for t in range(self.count):
            yield t, int(self.degree_a[t]), int(self.degree_b[t]), repr(float(self.ratios[t]))


QUANTILES = (0.5, 0.9, 0.99, 1.0)
CHUNK = 256


def _draw(rng, m, complex_field):
    if complex_field:
        return (rng.standard_normal(m) + 1j * rng.standard_normal(m)) / math.sqrt(2.0)
    return rng.standard_normal(m)


def ratio_sample(spec: AlgebraSpec, n_sigma: NormSpec, n_tau: Optional[NormSpec] = None,
                 n_rho: Optional[NormSpec] = None, count: int = 10_000, seed: int = 0,
                 threads: int = 1) -> SampleReport:
    """Ratios ``||a o b||_rho / (||a||_sigma ||b||_tau)`` over random pairs.

    Trial ``t`` uses its own generator seeded with ``(seed, t)``: it draws a
    degree split ``p + q = N`` and independent standard normal coordinates for
    ``a`` in the orthonormalized ``(sigma)`` basis of degrees ``<= p`` and for
    ``b`` in the ``(tau)`` basis of degrees ``<= q``.  Products therefore never
    truncate.  Results do not depend on ``threads``.
    """
    n_tau = n_sigma if n_tau is None else n_tau
    n_rho = n_sigma if n_rho is None else n_rho
    if count < 1:
        raise ValueError("count must be positive")
    words = basis(spec)
    off = _degree_offsets(spec, words)
    cs, ct, cr = (_Coordinates(n, spec, words) for n in (n_sigma, n_tau, n_rho))
    cplx = spec.field == "complex"
    dtype = complex if cplx or spec.kind is Kind.PAIRED and _has_complex_omega(spec) else float
    N = spec.N

    @lru_cache(maxsize=None)
    def smat(p):
        return structure_matrix(spec, words[:off[p]], words[:off[N - p]], words, dtype=dtype)

    for p in range(N + 1):
        smat(p)

    def run_chunk(start):
        stop = min(start + CHUNK, count)
        draws = []
        for t in range(start, stop):
            rng = np.random.default_rng([seed, t])
            p = int(rng.integers(0, N + 1))
            x = _draw(rng, off[p], cplx)
            y = _draw(rng, off[N - p], cplx)
            draws.append((t, p, x, y))
        ratios = np.empty(stop - start)
        for p in sorted({d[1] for d in draws}):
            rows = [d for d in draws if d[1] == p]
            X = np.array([d[2] for d in rows])
            Y = np.array([d[3] for d in rows])
            A = cs.backward(X, off[p])
            B = ct.backward(Y, off[N - p])
            K = (A[:, :, None] * B[:, None, :]).reshape(len(rows), -1)
            C = (smat(p) @ K.T).T
            Z = cr.forward(C)
            r = np.linalg.norm(Z, axis=1) / (np.linalg.norm(X, axis=1) * np.linalg.norm(Y, axis=1))
            for d, v in zip(rows, r):
                ratios[d[0] - start] = v
        return start, ratios, [(d[1], d[2], d[3]) for d in draws]

    starts = range(0, count, CHUNK)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run_chunk, starts))
    else:
        results = [run_chunk(s) for s in starts]
    results.sort(key=lambda r: r[0])
    ratios = np.concatenate([r[1] for r in results])
    degree_a = np.array([d[0] for r in results for d in r[2]])
    degree_b = N - degree_a
    best = int(np.argmax(ratios))
    _, x, y = [d for r in results for d in r[2]][best]
    p = int(degree_a[best])
    a = from_vector(spec, words[:off[p]], cs.backward(x[None, :], off[p])[0])
    b = from_vector(spec, words[:off[N - p]], ct.backward(y[None, :], off[N - p])[0])
    qs = {q: float(np.quantile(ratios, q)) for q in QUANTILES}
    return SampleReport(count, seed, float(ratios[best]), best, a, b, qs, ratios, degree_a, degree_b)


def _has_complex_omega(spec):
    return any(isinstance(x, complex) for row in spec.omega for x in row)


# ----------------------------------------------------------------------------------
# best constant
# ----------------------------------------------------------------------------------

@dataclass
class BestConstant:
    gamma_best: float
    iterations: int
    residual: float
    converged: bool
    dimension: int

    def to_json(self) -> dict:
        return {"gamma_best": self.gamma_best, "iterations": self.iterations,
                "residual": self.residual, "converged": self.converged, "dimension": self.dimension}


def multiplication_operator(spec: AlgebraSpec, n_sigma: NormSpec, n_tau: Optional[NormSpec] = None,
                            n_rho: Optional[NormSpec] = None, degree_cap: Optional[int] = None):
    """Sparse matrix of ``x (x) y -> x o y`` between orthonormalized coordinates.

    Products are truncated at ``degree_cap`` (default ``N``).
    """
    n_tau = n_sigma if n_tau is None else n_tau
    n_rho = n_sigma if n_rho is None else n_rho
    words = basis(spec, degree_cap)
    dtype = complex if spec.field == "complex" or (spec.kind is Kind.PAIRED and _has_complex_omega(spec)) else float
    S = structure_matrix(spec, words, words, words, dtype=dtype)
    cs, ct, cr = (_Coordinates(n, spec, words) for n in (n_sigma, n_tau, n_rho))
    right = sp.kron(cs.inverse_matrix(), ct.inverse_matrix(), format="csr")
    return (cr.matrix() @ S @ right).tocsr(), words


def best_constant(spec: AlgebraSpec, n_sigma: NormSpec, n_tau: Optional[NormSpec] = None,
                  n_rho: Optional[NormSpec] = None, degree_cap: Optional[int] = None,
                  tol: float = 1e-10, max_iter: int = 200_000, seed: int = 0) -> BestConstant:
    """Largest singular value of the orthonormalized multiplication map.

    Power iteration on ``T T^*`` (the smaller Gram operator; same non-zero
    spectrum as ``T^* T``) until the Rayleigh quotient changes by less than
    ``tol`` relative.  Raises :class:`ConvergenceError` at the iteration cap.
    """
    T, words = multiplication_operator(spec, n_sigma, n_tau, n_rho, degree_cap)
    TH = T.conj().T.tocsr()
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(T.shape[0]) + 1.0
    v /= np.linalg.norm(v)
    lam_old = 0.0
    for it in range(1, max_iter + 1):
        w = T @ (TH @ v)
        lam = float(np.real(np.vdot(v, w)))
        nw = np.linalg.norm(w)
        if nw == 0:
            return BestConstant(0.0, it, 0.0, True, len(words))
        if abs(lam - lam_old) <= tol * abs(lam):
            resid = float(np.linalg.norm(w - lam * v))
            return BestConstant(math.sqrt(lam), it, resid, True, len(words))
        lam_old = lam
        v = w / nw
    resid = float(np.linalg.norm(w - lam * v))
    raise ConvergenceError(f"power iteration did not converge in {max_iter} steps",
                           BestConstant(math.sqrt(max(lam, 0.0)), max_iter, resid, False, len(words)))


def best_constant_dense(spec: AlgebraSpec, n_sigma, n_tau=None, n_rho=None,
                        degree_cap: Optional[int] = None) -> float:
    """Dense SVD reference for :func:`best_constant`.

    Independent route: orthonormalizes the monomial basis by a Cholesky
    factor of the Gram matrix built with ``nspec.inner`` and multiplies
    basis elements through the element API.
    """
    n_tau = n_sigma if n_tau is None else n_tau
    n_rho = n_sigma if n_rho is None else n_rho
    words = basis(spec, degree_cap)
    top = max(len(w) for w in words)
    elems = [GradedElement(spec, {w: 1}) for w in words]

    def chol(nspec):
        G = np.array([[complex(nspec.inner(x, y)) for y in elems] for x in elems])
        return np.linalg.cholesky(G)  # G = L L^H, coordinates L^H c

    Ls, Lt, Lr = chol(n_sigma), chol(n_tau), chol(n_rho)
    cols = []
    for x in elems:
        for y in elems:
            t = x * y
            t = GradedElement(spec, {w: c for w, c in t if len(w) <= top})
            cols.append(to_vector(t, words, dtype=complex))
    S = np.array(cols).T
    right = np.kron(np.linalg.inv(Ls.conj().T), np.linalg.inv(Lt.conj().T))
    T = Lr.conj().T @ S @ right
    return float(np.linalg.svd(T, compute_uv=False)[0])


# ----------------------------------------------------------------------------------
# standard-norm violations
# ----------------------------------------------------------------------------------

def _blade_candidates(spec):
    odd = [i for i in range(1, spec.d + 1) if spec.is_odd(i)]
    if spec.kind is Kind.PAIRED or spec.N < 4:
        return
    for k in range(2, len(odd) // 2 + 1):
        blades = [(odd[2 * j], odd[2 * j + 1]) for j in range(k)]
        a = GradedElement(spec, {w: 1 for w in blades})
        yield f"disjoint_blades_{k}", a, a, {"blades": k, "words": blades}


def _blade_closed_form(nspec, spec, words):
    # a = B_1 + ... + B_k (disjoint 2-blades): a o a = 2 sum_{i<j} B_i B_j
    k = len(words)
    g2 = monomial_gram(spec, words[0], nspec.gram)
    g4 = monomial_gram(spec, tuple(sorted(words[0] + words[1])), nspec.gram)
    num = nspec.weight(4) * 4 * math.comb(k, 2) * g4
    den = (nspec.weight(2) * k * g2) ** 2
    return math.sqrt(num / den)


def _power_candidates(spec):
    if spec.kind in (Kind.PAIRED, Kind.TENSOR):
        return
    even = [i for i in range(1, spec.d + 1) if not spec.is_odd(i)]
    if not even:
        return
    i = even[0]
    for p in range(1, spec.N):
        for q in range(p, spec.N - p + 1):
            a = GradedElement(spec, {(i,) * p: 1})
            b = GradedElement(spec, {(i,) * q: 1})
            yield f"generator_powers_{p}_{q}", a, b, {"p": p, "q": q, "generator": i}


def _power_closed_form(nspec, p, q):
    g = (lambda n: 1.0) if nspec.gram is Gram.NORMALIZED else math.factorial
    return math.sqrt(nspec.weight(p + q) * g(p + q) / (nspec.weight(p) * g(p) * nspec.weight(q) * g(q)))


def _alternating_search(spec, nspec, restarts, seed, iters=200):
    words = basis(spec)
    coords = _Coordinates(nspec, spec, words)
    best = (0.0, None, None)
    rng = np.random.default_rng(seed)
    for p in range(1, spec.N):
        for q in range(1, spec.N - p + 1):
            left = degree_basis(spec, p)
            right = degree_basis(spec, q)
            out = basis(spec)
            S = structure_matrix(spec, left, right, out).toarray()
            sl = np.array([1.0 / math.sqrt(nspec.weight(p) * monomial_gram(spec, w, nspec.gram)) for w in left])
            sr = np.array([1.0 / math.sqrt(nspec.weight(q) * monomial_gram(spec, w, nspec.gram)) for w in right])
            T = coords.forward(S.T).T if coords.diagonal else coords.R @ S
            T = (T * np.kron(sl, sr)).reshape(len(out), len(left), len(right))
            for _ in range(restarts):
                y = rng.standard_normal(len(right))
                y /= np.linalg.norm(y)
                x = None
                for _ in range(iters):
                    My = T @ y
                    u, s, vh = np.linalg.svd(My, full_matrices=False)
                    x = vh[0]
                    Mx = np.einsum("kij,i->kj", T, x)
                    u, s, vh = np.linalg.svd(Mx, full_matrices=False)
                    y_new = vh[0]
                    if np.allclose(abs(y_new @ y), 1.0, atol=1e-15):
                        y = y_new
                        break
                    y = y_new
                r = float(np.linalg.norm(np.einsum("kij,i,j->k", T, x, y)))
                if r > best[0]:
                    a = from_vector(spec, left, x * sl)
                    b = from_vector(spec, right, y * sr)
                    best = (r, a, b)
    return best


def unweighted_violation_search(spec: AlgebraSpec, nspec: Optional[NormSpec] = None,
                                restarts: int = 8, seed: int = 0, tol: float = 1e-12) -> WitnessReport:
    """Find homogeneous ``a, b`` with ``||a o b|| > ||a|| ||b||``.

    Structured candidates come first (sums of disjoint 2-blades of odd
    generators, powers of an even generator); the best one above ``1 + tol``
    is returned.  Otherwise alternating singular-vector ascent runs from
    random starts.  Raises :class:`NoViolationFound` if nothing exceeds
    ``1 + tol``.
    """
    if nspec is None:
        nspec = NormSpec(WeightSpec.flat(), Gram.STANDARD)
    found = []
    for name, a, b, info in list(_blade_candidates(spec)) + list(_power_candidates(spec)):
        r = product_ratio(a, b, nspec)
        if "blades" in info:
            closed = _blade_closed_form(nspec, spec, info.pop("words"))
        else:
            closed = _power_closed_form(nspec, info["p"], info["q"])
        found.append((r, name, a, b, closed, info))
    hits = [c for c in found if c[0] > 1 + tol]
    if hits:
        r, name, a, b, closed, info = max(hits, key=lambda c: c[0])
        return WitnessReport(a, b, r, closed, None, (nspec,), "violation", {"candidate": name, **info})
    r, a, b = _alternating_search(spec, nspec, restarts, seed)
    if a is not None and r > 1 + tol:
        measured = product_ratio(a, b, nspec)
        return WitnessReport(a, b, measured, r, None, (nspec,), "violation", {"candidate": "ascent"})
    best = max([r] + [c[0] for c in found])
    raise NoViolationFound(f"no pair with ratio above 1 + {tol:g}; best {best:.15g}", best)
