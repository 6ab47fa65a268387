"""Dense multilinear forms: evaluation, operator norms, composition, currying.

A form is held as its coefficient tensor A(e_i1, ..., e_in). Operator norms
over products of unit balls are exact by extreme-point enumeration on real
sup-norm and l_1 domains, and otherwise estimated by multi-start alternating
maximization (the free slot is optimized in closed form against the partial
contraction), always flagged with their provenance.
"""

from __future__ import annotations

import string
from dataclasses import dataclass

import numpy as np

from ._codec import decode_exponent, decode_values, encode_exponent, encode_values
from ._signs import sign_matrix
from .norms import NormEstimate
from .spaces import ScalarField, SpaceSpec

__all__ = ["FormTensor", "CurriedForm", "evaluate", "op_norm", "compose_beta", "curry"]


@dataclass
class FormTensor:
    """An n-linear form on finite sequence spaces, as its coefficient tensor."""

    coeffs: np.ndarray
    domains: tuple[SpaceSpec, ...]
    field: ScalarField = ScalarField.REAL

    def __post_init__(self):
        self.domains = tuple(self.domains)
        arr = np.asarray(self.coeffs)
        if self.field.is_complex:
            arr = arr.astype(np.complex128)
        else:
            if np.iscomplexobj(arr):
                raise ValueError("real form with complex coefficients")
            arr = arr.astype(np.float64)
        if arr.shape != tuple(d.dim for d in self.domains):
            raise ValueError(
                f"coefficient shape {arr.shape} does not match domains "
                f"{tuple(d.dim for d in self.domains)}"
            )
        if not np.all(np.isfinite(arr)):
            raise ValueError("coefficients must be finite")
        self.coeffs = arr

    @property
    def order(self) -> int:
        return len(self.domains)

    @property
    def dims(self) -> tuple[int, ...]:
        return self.coeffs.shape

    @classmethod
    def on_linf(cls, coeffs, field: ScalarField = ScalarField.REAL) -> "FormTensor":
        """Form on a product of sup-norm spaces sized from the array."""
        arr = np.asarray(coeffs)
        return cls(arr, tuple(SpaceSpec.linf(m) for m in arr.shape), field)

    def to_json(self) -> dict:
        return {
            "field": str(self.field),
            "dims": list(self.dims),
            "domain_exponents": [encode_exponent(d.exponent) for d in self.domains],
            "coeffs": encode_values(self.coeffs.reshape(-1)),
        }

    @classmethod
    def from_json(cls, data: dict) -> "FormTensor":
        field = ScalarField(data["field"])
        dims = [int(m) for m in data["dims"]]
        exponents = data.get("domain_exponents", ["inf"] * len(dims))
        if len(exponents) != len(dims):
            raise ValueError("domain_exponents must match dims")
        domains = tuple(
            SpaceSpec(m, decode_exponent(s)) for m, s in zip(dims, exponents)
        )
        flat = decode_values(data["coeffs"], field.is_complex)
        if flat.shape[0] != int(np.prod(dims)):
            raise ValueError("coeffs length does not match dims")
        return cls(flat.reshape(dims), domains, field)


def evaluate(A: FormTensor, xs) -> float | complex:
    """Contract the coefficient tensor with one vector per slot."""
    if len(xs) != A.order:
        raise ValueError(f"expected {A.order} vectors, got {len(xs)}")
    t = A.coeffs
    for i, x in enumerate(xs):
        v = np.asarray(x)
        if v.shape != (A.dims[i],):
            raise ValueError(f"slot {i}: vector shape {v.shape} != ({A.dims[i]},)")
        t = np.tensordot(t, v, axes=([0], [0]))
    return complex(t) if np.iscomplexobj(t) else float(t)


def compose_beta(beta, a) -> np.ndarray:
    """Matrix product (beta o a)_jk = sum_l beta_jl a_lk."""
    b = np.asarray(beta)
    m = np.asarray(a)
    if b.ndim != 2 or m.ndim != 2:
        raise ValueError("compose_beta expects two matrices")
    if b.shape[1] != m.shape[0]:
        raise ValueError(f"inner dimensions disagree: {b.shape} vs {m.shape}")
    return b @ m


def _candidate_rows(space: SpaceSpec) -> np.ndarray:
    if space.is_sup:
        return sign_matrix(space.dim)
    return np.eye(space.dim)


def _enumeration_work(A: FormTensor, free: int) -> int:
    work = A.dims[free]
    for i, d in enumerate(A.domains):
        if i != free:
            work *= (1 << d.dim) if d.is_sup else d.dim
    return work


def op_norm(
    A: FormTensor,
    *,
    budget: int = 1 << 22,
    starts: int = 32,
    seed: int = 0,
    sweeps: int = 200,
    allow_heuristic: bool = True,
) -> NormEstimate:
    """Supremum of |A(x1, ..., xn)| over the product of unit balls.

    Exact paths: every domain an l_1 space (maximal coefficient magnitude,
    either field), or a real form whose domains are sup-norm or l_1 spaces
    with the extreme-point enumeration inside ``budget``; one sup-norm slot
    is always maximized in closed form. Everything else falls back to
    multi-start alternating maximization and is flagged ``exact=False``.
    """
    if all(d.exponent.recip == 1 for d in A.domains):
        flat = int(np.argmax(np.abs(A.coeffs)))
        idx = np.unravel_index(flat, A.dims)
        witness = []
        for i, k in enumerate(idx):
            e = np.zeros(A.dims[i])
            e[k] = 1.0
            witness.append(e)
        return NormEstimate(
            float(np.abs(A.coeffs[idx])), True, witness=tuple(witness)
        )

    enumerable = not A.field.is_complex and all(
        d.is_sup or d.exponent.recip == 1 for d in A.domains
    )
    if enumerable:
        sup_slots = [i for i, d in enumerate(A.domains) if d.is_sup]
        free = max(sup_slots, key=lambda i: A.dims[i])
        if _enumeration_work(A, free) <= budget:
            return _op_norm_enumerate(A, free)
        if not allow_heuristic:
            raise ValueError(
                "enumeration budget exceeded and heuristic fallback disabled"
            )
    elif not allow_heuristic:
        raise ValueError(
            "no exact enumeration for these domains and heuristic fallback disabled"
        )
    return _op_norm_alternating(A, starts=starts, seed=seed, sweeps=sweeps)


def _op_norm_enumerate(A: FormTensor, free: int) -> NormEstimate:
    t = np.moveaxis(A.coeffs, free, -1)
    others = [i for i in range(A.order) if i != free]
    candidates = [_candidate_rows(A.domains[i]) for i in others]
    for C in candidates:
        t = np.tensordot(t, C, axes=([0], [1]))
    # t now has shape (m_free, K_1, ..., K_r); the free slot is closed form
    values = np.abs(t).sum(axis=0)
    flat = int(np.argmax(values))
    value = float(values.reshape(-1)[flat])
    combo = np.unravel_index(flat, values.shape) if values.ndim else ()
    witness: list[np.ndarray | None] = [None] * A.order
    for slot, C, k in zip(others, candidates, combo):
        witness[slot] = C[k]
    partial = t[(slice(None),) + tuple(combo)]
    witness[free] = np.where(partial >= 0, 1.0, -1.0)
    return NormEstimate(value, True, witness=tuple(witness))


def _letters(n: int) -> list[str]:
    return list(string.ascii_lowercase[:n])


def _batch_contract(coeffs: np.ndarray, vectors: list[np.ndarray],
                    skip: int | None = None) -> np.ndarray:
    """Contract every slot except ``skip`` with batched vectors (S, m_i)."""
    n = coeffs.ndim
    ls = _letters(n)
    operands = [coeffs]
    subs = ["".join(ls)]
    for i in range(n):
        if i == skip:
            continue
        operands.append(vectors[i])
        subs.append("S" + ls[i])
    out = "S" if skip is None else "S" + ls[skip]
    return np.einsum(",".join(subs) + "->" + out, *operands)


def _dual_step(c: np.ndarray, space: SpaceSpec, is_complex: bool) -> np.ndarray:
    """Batched closed-form maximizer of |<c, x>| over the unit ball, per row."""
    mag = np.abs(c)
    if is_complex:
        phase = np.where(mag == 0, 1.0 + 0j, np.conj(c) / np.where(mag == 0, 1.0, mag))
    else:
        phase = np.where(c >= 0, 1.0, -1.0)
    s = space.exponent
    if s.is_inf:
        return phase
    if s.recip == 1:
        out = np.zeros_like(c)
        rows = np.arange(c.shape[0])
        cols = np.argmax(mag, axis=1)
        out[rows, cols] = phase[rows, cols]
        return out
    sd = s.dual
    w = mag ** (sd.value / s.value)
    nrm = (w ** s.value).sum(axis=1) ** (1.0 / s.value)
    nrm = np.where(nrm == 0, 1.0, nrm)
    out = phase * w / nrm[:, None]
    dead = (mag.sum(axis=1) == 0)
    if np.any(dead):
        out[dead] = 0
        out[dead, 0] = 1.0
    return out


def _op_norm_alternating(A: FormTensor, *, starts: int, seed: int,
                         sweeps: int) -> NormEstimate:
    rng = np.random.default_rng(seed)
    is_complex = A.field.is_complex
    dtype = np.complex128 if is_complex else np.float64
    S = max(2, starts)

    vectors = []
    argmax_idx = np.unravel_index(int(np.argmax(np.abs(A.coeffs))), A.dims)
    for i, d in enumerate(A.domains):
        V = rng.standard_normal((S, d.dim))
        if is_complex:
            V = V + 1j * rng.standard_normal((S, d.dim))
        V = V.astype(dtype)
        V[0] = 1.0  # flat start
        V[1] = 0.0
        V[1, argmax_idx[i]] = 1.0  # largest-coefficient start
        nrm = np.array([max(_ball_norm(v, d), 1e-300) for v in V])
        vectors.append(V / nrm[:, None])

    prev = np.zeros(S)
    values = prev
    for _ in range(sweeps):
        for i in range(A.order):
            c = _batch_contract(A.coeffs, vectors, skip=i)
            vectors[i] = _dual_step(c, A.domains[i], is_complex)
        values = np.abs(_batch_contract(A.coeffs, vectors))
        gain = float((values - prev).max())
        prev = np.maximum(prev, values)
        if gain <= 1e-12 * max(float(prev.max()), 1e-300):
            break
    k = int(np.argmax(prev))
    witness = tuple(vectors[i][k] for i in range(A.order))
    return NormEstimate(float(prev[k]), False, witness=witness)


def _ball_norm(v: np.ndarray, space: SpaceSpec) -> float:
    a = np.abs(v)
    s = space.exponent
    if s.is_inf:
        return float(a.max())
    return float((a ** s.value).sum() ** (1.0 / s.value))


@dataclass
class CurriedForm:
    """A form viewed as a k-linear map into the forms on the remaining slots."""

    base: FormTensor
    k: int

    @property
    def head_domains(self) -> tuple[SpaceSpec, ...]:
        return self.base.domains[: self.k]

    @property
    def tail_domains(self) -> tuple[SpaceSpec, ...]:
        return self.base.domains[self.k:]

    def apply(self, xs) -> FormTensor:
        """Evaluate the head on k vectors; the result is the tail form."""
        if len(xs) != self.k:
            raise ValueError(f"expected {self.k} head vectors, got {len(xs)}")
        t = self.base.coeffs
        for i, x in enumerate(xs):
            v = np.asarray(x)
            if v.shape != (self.base.dims[i],):
                raise ValueError(f"head slot {i}: bad vector shape {v.shape}")
            t = np.tensordot(t, v, axes=([0], [0]))
        field = ScalarField.COMPLEX if np.iscomplexobj(t) else self.base.field
        return FormTensor(t, self.tail_domains, field)

    def uncurry(self) -> FormTensor:
        """The inverse view; currying is a lossless reshape."""
        return self.base


def curry(A: FormTensor, k: int) -> CurriedForm:
    """Split the first k slots off as the head of an operator-valued map."""
    if not 1 <= k < A.order:
        raise ValueError(f"k must satisfy 1 <= k < {A.order}, got {k}")
    return CurriedForm(A, k)
