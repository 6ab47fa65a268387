"""Rademacher averages of finite vector sequences, exact or Monte Carlo.

For a finite sequence the defining supremum collapses to a single term, so
the exact value is the plain average over all 2^n sign patterns (each dyadic
cell of the unit interval realizes one pattern with equal weight). Monte
Carlo sampling uses a counter-based generator so results are reproducible
regardless of how the work is scheduled.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from ._signs import sign_block
from .norms import VectorSeq, _axis_norms
from .spaces import Exponent, ExponentLike

__all__ = [
    "SignPattern",
    "rad_p_norm",
    "rademacher_average",
    "contraction_check",
    "ContractionCheck",
    "kahane_ratio",
]

_BLOCK = 1 << 13
_PARTITIONS = 64


@dataclass(frozen=True)
class SignPattern:
    """One realization of n independent signs."""

    signs: tuple[int, ...]

    def __post_init__(self):
        if any(s not in (-1, 1) for s in self.signs):
            raise ValueError("signs must be +1 or -1")

    @classmethod
    def from_index(cls, index: int, n: int) -> "SignPattern":
        row = sign_block(n, index, 1)[0]
        return cls(tuple(int(s) for s in row))


def _kahan_total(values) -> float:
    total = 0.0
    comp = 0.0
    for v in values:
        y = v - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total


def rademacher_average(
    items: np.ndarray,
    norm_fn: Callable[[np.ndarray], np.ndarray],
    p: ExponentLike,
    mode: str = "exact",
    *,
    samples: int = 100_000,
    seed: int = 0,
    budget: int = 1 << 22,
) -> float:
    """(E ||sum_j eps_j v_j||^p)^(1/p) for arbitrary items and norm.

    ``items`` has one summand per leading index; ``norm_fn`` maps a batch of
    sign combinations (same trailing shape) to their norms. Exact mode runs
    all 2^n patterns in fixed partitions with compensated summation, so the
    result does not depend on scheduling; mc mode averages seeded samples.
    """
    v = np.asarray(items)
    n = v.shape[0]
    if n == 0:
        raise ValueError("empty sequence")
    pe = Exponent.of(p)
    flat = v.reshape(n, -1)

    def block_norms(signs: np.ndarray) -> np.ndarray:
        combos = signs @ flat
        return np.asarray(norm_fn(combos.reshape((signs.shape[0],) + v.shape[1:])))

    if mode == "exact":
        total = 1 << n
        if total > budget:
            raise ValueError(
                f"exact mode needs 2^{n} patterns, over the budget {budget}"
            )
        if pe.is_inf:
            worst = 0.0
            for start in range(0, total, _BLOCK):
                count = min(_BLOCK, total - start)
                worst = max(worst, float(block_norms(sign_block(n, start, count)).max()))
            return worst
        pv = pe.value
        bounds = np.linspace(0, total, _PARTITIONS + 1, dtype=np.int64)
        partition_sums = []
        for lo, hi in zip(bounds[:-1], bounds[1:]):
            block_sums = []
            for start in range(int(lo), int(hi), _BLOCK):
                count = min(_BLOCK, int(hi) - start)
                if count <= 0:
                    continue
                block_sums.append(float((block_norms(sign_block(n, start, count)) ** pv).sum()))
            partition_sums.append(_kahan_total(block_sums))
        mean = _kahan_total(partition_sums) / total
        return float(mean ** (1.0 / pv))

    if mode == "mc":
        gen = np.random.Generator(np.random.Philox(key=seed))
        if pe.is_inf:
            worst = 0.0
        else:
            pv = pe.value
            acc = []
        remaining = samples
        while remaining > 0:
            count = min(_BLOCK, remaining)
            signs = 1.0 - 2.0 * gen.integers(0, 2, size=(count, n)).astype(np.float64)
            norms = block_norms(signs)
            if pe.is_inf:
                worst = max(worst, float(norms.max()))
            else:
                acc.append(float((norms ** pv).sum()))
            remaining -= count
        if pe.is_inf:
            return worst
        return float((_kahan_total(acc) / samples) ** (1.0 / pv))

    raise ValueError(f"unknown mode {mode!r}")


def rad_p_norm(
    seq: VectorSeq,
    p: ExponentLike = 2,
    mode: str = "exact",
    *,
    samples: int = 100_000,
    seed: int = 0,
    budget: int = 1 << 22,
) -> float:
    """Rad_p norm of a vector sequence in its own space norm.

    Exact mode averages over all 2^n sign patterns (n = sequence length and
    2^n <= budget); for p = inf it is the worst-case sign combination. mc
    mode is the empirical mean over ``samples`` seeded patterns.
    """
    s = seq.space.exponent

    def norm_fn(rows: np.ndarray) -> np.ndarray:
        return _axis_norms(np.abs(rows), s, axis=1)

    return rademacher_average(
        seq.vectors, norm_fn, p, mode, samples=samples, seed=seed, budget=budget
    )


@dataclass(frozen=True)
class ContractionCheck:
    passed: bool
    scaled: float
    unscaled: float

    def __bool__(self) -> bool:
        return self.passed


def contraction_check(
    seq: VectorSeq,
    alphas,
    p: ExponentLike,
    mode: str = "exact",
    *,
    tol: float = 1e-12,
    **kwargs,
) -> ContractionCheck:
    """Rad_p of (alpha_j x_j) against Rad_p of (x_j) for |alpha_j| <= 1."""
    a = np.asarray(alphas)
    if a.shape != (seq.length,):
        raise ValueError("need one multiplier per vector")
    if np.abs(a).max(initial=0.0) > 1.0 + 1e-12:
        raise ValueError("multipliers must satisfy |alpha_j| <= 1")
    if mode == "exact" and np.iscomplexobj(a):
        raise ValueError("exact mode expects real multipliers")
    scaled = rad_p_norm(seq.scaled(a), p, mode, **kwargs)
    unscaled = rad_p_norm(seq, p, mode, **kwargs)
    return ContractionCheck(scaled <= unscaled + tol, scaled, unscaled)


def kahane_ratio(seq: VectorSeq, p: ExponentLike, q: ExponentLike,
                 mode: str = "exact", **kwargs) -> float:
    """Rad_p / Rad_q for the same sequence; reported, not asserted."""
    denom = rad_p_norm(seq, q, mode, **kwargs)
    if denom == 0.0:
        raise ValueError("Rad_q vanishes; all vectors are zero")
    return rad_p_norm(seq, p, mode, **kwargs) / denom
