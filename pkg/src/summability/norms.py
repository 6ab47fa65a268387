"""Sequence p-norms, mixed matrix norms, and weak norms of vector sequences.

Weak norms are computed exactly where a norming set is available (coordinate
functionals on sup-norm spaces, sign vectors on real l_1 spaces) and by
multi-start projected ascent on the dual sphere otherwise; every result
carries an ``exact`` flag so downstream inequality checks know whether they
hold a certified value or a lower bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np

from ._codec import decode_exponent, decode_values, encode_exponent, encode_values
from ._signs import sign_matrix
from .spaces import Exponent, ExponentLike, ScalarField, SpaceSpec

__all__ = ["lp_norm", "mixed_norm", "weak_lp_norm", "NormEstimate", "VectorSeq"]


def lp_norm(v, p: ExponentLike) -> float:
    """(sum |v_i|^p)^(1/p); max |v_i| for p = inf.

    Defined for every p > 0; values with 0 < p < 1 are the usual p-norm
    expression (no triangle inequality implied).
    """
    e = Exponent.of(p)
    a = np.abs(np.asarray(v, dtype=None))
    if a.size == 0:
        return 0.0
    if e.is_inf:
        return float(a.max())
    pv = e.value
    return float((a.astype(np.float64) ** pv).sum() ** (1.0 / pv))


def _axis_norms(a: np.ndarray, e: Exponent, axis: int) -> np.ndarray:
    if e.is_inf:
        return a.max(axis=axis)
    pv = e.value
    return (a ** pv).sum(axis=axis) ** (1.0 / pv)


def mixed_norm(M, p: ExponentLike, q: ExponentLike) -> float:
    """Outer p-norm over columns k of the inner q-norms over rows j.

    For a matrix m_jk this is (sum_k (sum_j |m_jk|^q)^(p/q))^(1/p), with the
    infinite exponents handled as suprema.
    """
    pe, qe = Exponent.of(p), Exponent.of(q)
    A = np.abs(np.asarray(M))
    if A.ndim != 2 or A.size == 0:
        raise ValueError("mixed_norm expects a nonempty 2-d matrix")
    inner = _axis_norms(A.astype(np.float64), qe, axis=0)
    return lp_norm(inner, pe)


@dataclass(frozen=True)
class NormEstimate:
    """A norm value together with its provenance.

    ``exact=False`` marks a certified lower bound obtained by ascent; exact
    values come from norming-set or extreme-point enumeration.
    """

    value: float
    exact: bool
    witness: Any = None

    def __float__(self) -> float:
        return self.value


@dataclass
class VectorSeq:
    """A finite sequence of vectors in a common space; one vector per row."""

    vectors: np.ndarray
    space: SpaceSpec

    def __post_init__(self):
        arr = np.atleast_2d(np.asarray(self.vectors))
        arr = arr.astype(np.complex128 if np.iscomplexobj(arr) else np.float64)
        if arr.ndim != 2:
            raise ValueError("vectors must form a 2-d array (one vector per row)")
        if arr.shape[1] != self.space.dim:
            raise ValueError(
                f"vector length {arr.shape[1]} does not match space dimension "
                f"{self.space.dim}"
            )
        self.vectors = arr

    @property
    def length(self) -> int:
        return self.vectors.shape[0]

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    @property
    def is_complex(self) -> bool:
        return np.iscomplexobj(self.vectors)

    @property
    def field(self) -> ScalarField:
        return ScalarField.COMPLEX if self.is_complex else ScalarField.REAL

    def scaled(self, coefficients) -> "VectorSeq":
        """Row-wise scaling (alpha_j x_j)_j."""
        c = np.asarray(coefficients)
        if c.shape != (self.length,):
            raise ValueError("need one coefficient per vector")
        return VectorSeq(self.vectors * c[:, None], self.space)

    def to_json(self) -> dict:
        return {
            "field": str(self.field),
            "dim": self.dim,
            "exponent": encode_exponent(self.space.exponent),
            "vectors": encode_values(self.vectors),
        }

    @classmethod
    def from_json(cls, data: dict) -> "VectorSeq":
        field = ScalarField(data["field"])
        space = SpaceSpec(int(data["dim"]), decode_exponent(data["exponent"]))
        vectors = decode_values(data["vectors"], field.is_complex)
        return cls(vectors, space)


def weak_lp_norm(
    seq: VectorSeq,
    p: ExponentLike,
    *,
    starts: int = 32,
    seed: int = 0,
    max_iter: int = 10_000,
    sign_budget: int = 1 << 22,
    method: str = "auto",
) -> NormEstimate:
    """sup over the dual unit ball of (sum_j |phi(x_j)|^p)^(1/p).

    Exact on sup-norm spaces via the coordinate functionals
    sup_k (sum_j |x_j(k)|^p)^(1/p), and on real l_1 spaces by enumerating the
    2^m sign functionals. Otherwise multi-start projected ascent on the dual
    sphere returns the best value found, flagged as a certified lower bound.
    """
    pe = Exponent.of(p)
    X = seq.vectors
    if seq.length == 0:
        raise ValueError("empty sequence")
    if method not in ("auto", "ascent"):
        raise ValueError(f"unknown method {method!r}")
    s = seq.space.exponent

    if method == "auto":
        if s.is_inf:
            per_coord = _axis_norms(np.abs(X), pe, axis=0)
            k = int(np.argmax(per_coord))
            return NormEstimate(float(per_coord[k]), True, witness=("coordinate", k))
        if s.recip == 1 and not seq.is_complex and (1 << seq.dim) <= sign_budget:
            Phi = sign_matrix(seq.dim)
            values = _axis_norms(np.abs(X @ Phi.T), pe, axis=0)
            b = int(np.argmax(values))
            return NormEstimate(float(values[b]), True, witness=("signs", Phi[b]))
        if seq.length == 1:
            return NormEstimate(lp_norm(X[0], s), True, witness=("single",))
    return _dual_ascent(seq, pe, starts=starts, seed=seed, max_iter=max_iter)


def _normalize_dual(phi: np.ndarray, sd: Exponent) -> np.ndarray:
    nrm = lp_norm(phi, sd)
    if nrm == 0.0:
        out = np.zeros_like(phi)
        out[0] = 1.0
        return out
    return phi / nrm


def _weak_objective(X: np.ndarray, phi: np.ndarray, pe: Exponent) -> float:
    d = np.abs(X @ phi)
    if pe.is_inf:
        return float(d.max())
    return float((d ** pe.value).sum())


def _weak_gradient(X: np.ndarray, phi: np.ndarray, pe: Exponent) -> np.ndarray:
    d = X @ phi
    mag = np.abs(d)
    if pe.is_inf:
        w = np.zeros_like(d)
        j = int(np.argmax(mag))
        w[j] = 1.0 if mag[j] == 0 else d[j] / mag[j]
    else:
        pv = pe.value
        with np.errstate(divide="ignore", invalid="ignore"):
            w = np.where(mag > 1e-300, pv * mag ** (pv - 2.0) * d, 0.0)
    if np.iscomplexobj(X) or np.iscomplexobj(phi):
        return w @ X.conj()
    return w @ X


def _dual_ascent(seq: VectorSeq, pe: Exponent, *, starts: int, seed: int,
                 max_iter: int) -> NormEstimate:
    X = seq.vectors
    m = seq.dim
    sd = seq.space.exponent.dual
    is_complex = seq.is_complex
    rng = np.random.default_rng(seed)

    init = []
    col_energy = np.sqrt((np.abs(X) ** 2).sum(axis=0))
    e_best = np.zeros(m, dtype=np.complex128 if is_complex else np.float64)
    e_best[int(np.argmax(col_energy))] = 1.0
    init.append(e_best)
    init.append(col_energy.astype(e_best.dtype) + 0.0)
    while len(init) < starts:
        g = rng.standard_normal(m)
        if is_complex:
            g = g + 1j * rng.standard_normal(m)
        init.append(g)

    best_val = -np.inf
    best_phi = init[0]
    for phi0 in init:
        phi = _normalize_dual(phi0, sd)
        g = _weak_objective(X, phi, pe)
        step = 0.5
        for _ in range(max_iter):
            grad = _weak_gradient(X, phi, pe)
            cand = _normalize_dual(phi + step * grad, sd)
            g_cand = _weak_objective(X, cand, pe)
            if g_cand > g:
                improvement = (g_cand - g) / max(g, 1e-300)
                phi, g = cand, g_cand
                step = min(step * 1.5, 8.0)
                if improvement < 1e-12:
                    break
            else:
                step *= 0.5
                if step < 1e-18:
                    break
        # snap to an extreme candidate when the dual sphere has corners
        if sd.is_inf:
            corner = np.where(np.abs(phi) == 0, 1.0, np.sign(phi.real))
            if is_complex:
                mag = np.abs(phi)
                corner = np.where(mag == 0, 1.0, phi / np.where(mag == 0, 1.0, mag))
            g_corner = _weak_objective(X, corner, pe)
            if g_corner > g:
                phi, g = corner, g_corner
        elif sd.recip == 1:
            k = int(np.argmax(np.abs(phi)))
            corner = np.zeros_like(phi)
            corner[k] = 1.0
            g_corner = _weak_objective(X, corner, pe)
            if g_corner > g:
                phi, g = corner, g_corner
        if g > best_val:
            best_val, best_phi = g, phi
    value = best_val if pe.is_inf else best_val ** (1.0 / pe.value)
    return NormEstimate(float(value), False, witness=("functional", best_phi))
