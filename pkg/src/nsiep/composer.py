"""Recursive construction of nonnegative matrices from 2x2 blocks.

The matrix grows one row and column per eigenvalue. At each step the
bottom-right entry of the current matrix (the *corner*) is the Perron root
of the next 2x2 block, and the bordered merge swaps that entry for the block,
coupling it to the rest through outer products with the block's Perron
vector. The spectrum of the result is the old spectrum plus the block's
second eigenvalue.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .blocks import Block2, PerronPair, canonical_nonsym, canonical_sym, perron_pair
from .errors import (
    InternalNonnegativityViolation,
    ModeMismatch,
    NegativeScalar,
    NotRealizableStep,
    PerronMismatch,
)
from .spectrum import Spectrum, make_spectrum

MODES = ("symmetric", "general")
CLAMP_TOL = 1e-14


@dataclass(frozen=True)
class Step:
    index: int
    block: Block2
    perron: PerronPair


@dataclass
class ConstructionTrace:
    mode: str
    steps: list[Step] = field(default_factory=list)
    final_corner: float = 0.0


def _check_mode(mode: str) -> None:
    if mode not in MODES:
        raise ModeMismatch(f"mode must be one of {MODES}, got {mode!r}")


def emit_nonnegative(M: np.ndarray) -> np.ndarray:
    """Clamp round-off negatives to zero in place; refuse anything larger."""
    if not np.all(np.isfinite(M)):
        raise InternalNonnegativityViolation("matrix has non-finite entries")
    if M.size == 0:
        return M
    scale = max(1.0, float(np.max(np.abs(M))))
    low = float(M.min())
    if low < -CLAMP_TOL * scale:
        raise InternalNonnegativityViolation(f"entry {low!r} is negative beyond round-off")
    np.maximum(M, 0.0, out=M)
    return M


def merge_into(M: np.ndarray, k: int, blk: Block2, perron: PerronPair, mode: str) -> None:
    """Bordered merge in place.

    ``M[:k, :k]`` holds the current matrix; on return ``M[:k+1, :k+1]`` holds
    the merged one. Only O(k) entries are touched.
    """
    v0, v1 = perron.vector
    col = M[: k - 1, k - 1].copy()
    M[: k - 1, k - 1] = col * v0
    M[: k - 1, k] = col * v1
    if mode == "symmetric":
        M[k - 1, : k - 1] = col * v0
        M[k, : k - 1] = col * v1
    else:
        row = M[k - 1, : k - 1].copy()
        M[k - 1, : k - 1] = v0 * row
        M[k, : k - 1] = v1 * row
    M[k - 1, k - 1] = blk.a
    M[k - 1, k] = blk.b
    M[k, k - 1] = blk.c
    M[k, k] = blk.d


def border_merge(A: np.ndarray, B: Block2, v: PerronPair, mode: str = "symmetric") -> np.ndarray:
    """Replace the corner of ``A`` by the block ``B``.

    Returns the ``(k+1) x (k+1)`` matrix whose spectrum is that of ``A`` plus
    ``B.lam2``. ``A``'s corner must equal ``B``'s Perron root.
    """
    _check_mode(mode)
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
        raise ValueError(f"A must be a non-empty square matrix, got shape {A.shape}")
    k = A.shape[0]
    corner = A[k - 1, k - 1]
    if abs(corner - v.value) > 1e-9 * max(1.0, abs(v.value)) or v.value != B.lam1:
        raise PerronMismatch(f"corner {corner!r} is not the Perron root {B.lam1!r} of the block")
    if mode == "symmetric":
        scale = max(1.0, float(np.max(np.abs(A))))
        if not B.symmetric or B.b != B.c:
            raise ModeMismatch("symmetric merge needs a symmetric block")
        if np.max(np.abs(A - A.T)) > 1e-12 * scale:
            raise ModeMismatch("symmetric merge needs a symmetric matrix")
    C = np.zeros((k + 1, k + 1))
    C[:k, :k] = A
    merge_into(C, k, B, v, mode)
    return C


def construct(s: Spectrum | Sequence[float], mode: str = "symmetric") -> tuple[np.ndarray, ConstructionTrace]:
    """Build a nonnegative matrix with spectrum ``s``.

    The values are sorted descending. Nonnegative values enter through
    diagonal blocks, negative ones through the canonical block of ``mode``
    (symmetric square-root block, or the ``[[0, -corner*lam], [1, corner+lam]]``
    companion form for ``"general"``).

    Raises
    ------
    NotRealizableStep
        When the largest value plus the running sum of negative values drops
        below zero; for sorted input this happens exactly when the weak
        condition fails.
    NegativeScalar
        For a single negative value.
    """
    _check_mode(mode)
    s = make_spectrum(s)
    vals = s.values
    n = s.n
    lead = vals[0]
    if n == 1:
        if lead < 0:
            raise NegativeScalar(f"1x1 nonnegative matrix cannot have eigenvalue {lead!r}")
        return np.array([[lead]]), ConstructionTrace(mode, [], lead)

    canon = canonical_sym if mode == "symmetric" else canonical_nonsym
    M = np.zeros((n, n))
    M[0, 0] = lead
    corner = lead
    partial = 0.0
    steps: list[Step] = []
    for i in range(2, n + 1):
        lam = vals[i - 1]
        if lam < 0:
            partial += lam
            # corner as lead + partial sum, so the last one is exactly lead + neg_sum
            total = lead + partial
            if total < 0:
                raise NotRealizableStep(i, corner, lam)
            blk = canon(corner, lam, total=total)
        else:
            blk = canon(corner, lam)
        pp = perron_pair(blk)
        merge_into(M, i - 1, blk, pp, mode)
        corner = blk.d
        if i >= 3:
            steps.append(Step(i, blk, pp))
    return emit_nonnegative(M), ConstructionTrace(mode, steps, corner)
