"""Row-stochastic matrices with a prescribed real spectrum.

Pipeline: scale the spectrum so its leading value is 1, build an
*irreducible* symmetric nonnegative realization, find its positive Perron
vector ``x`` and apply the diagonal similarity ``S = D^-1 A D / rho`` with
``D = diag(x)``.

Irreducibility comes from the positive insertions: instead of diagonal
blocks they use interior blocks ``[[lam + delta, b], [b, beta - delta]]``
with ``delta > 0``, so every merge couples the new rows to the old ones.
The offset schedule ``delta_i = min((beta + neg)/2**(i-1), (beta - lam_i)/2)``
keeps enough of the corner ``beta`` for the negative insertions that follow.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.sparse.csgraph import connected_components

from .blocks import canonical_sym, general_block, perron_pair
from .composer import ConstructionTrace, Step, emit_nonnegative, merge_into
from .errors import (
    BadEigenpair,
    IrreducibilityLost,
    NonPositiveLeading,
    NotConverged,
    NotDominant,
    NotPositive,
    NotRealizable,
    NotRealizableStep,
    PerronOrderViolated,
)
from .spectrum import Spectrum, check_weak_condition, make_spectrum

POWER_TOL = 1e-13
POSITIVE_TOL = 1e-12
MAX_POWER_ITER = 1_000_000


@dataclass(frozen=True)
class StochasticResult:
    S: np.ndarray
    scale: float
    perron_vector: np.ndarray
    iterations: int
    nonnegative: np.ndarray
    trace: ConstructionTrace


def normalize_spectrum(s: Spectrum | Sequence[float]) -> Spectrum:
    """Divide by the leading value so it becomes exactly 1."""
    s = make_spectrum(s)
    lead = s.values[0]
    if lead <= 0:
        raise NonPositiveLeading(f"leading eigenvalue {lead!r} must be positive")
    if abs(s.values[-1]) > lead:
        raise NotDominant(f"|{s.values[-1]!r}| exceeds the leading eigenvalue {lead!r}")
    return Spectrum((1.0,) + tuple(v / lead for v in s.values[1:]))


def offset(beta: float, lam: float, neg_sum: float, i: int) -> float:
    """Diagonal offset of the positive block inserted at (1-based) step ``i``."""
    return min((beta + neg_sum) / 2 ** (i - 1), (beta - lam) / 2)


def construct_irreducible(s: Spectrum | Sequence[float]) -> tuple[np.ndarray, ConstructionTrace]:
    """Irreducible symmetric nonnegative matrix with spectrum ``s``.

    Expects a leading value that dominates in modulus (normally the
    normalized spectrum). The result is irreducible whenever every offset is
    positive, i.e. unless the weak condition holds with equality or a
    positive value repeats the corner.
    """
    s = make_spectrum(s)
    if not check_weak_condition(s):
        raise NotRealizable(
            f"largest eigenvalue plus the negative sum is {s.values[0] + s.neg_sum!r} < 0"
        )
    vals = s.values
    n = s.n
    lead = vals[0]
    M = np.zeros((n, n))
    M[0, 0] = lead
    beta = lead
    steps: list[Step] = []

    for i in range(2, s.r + 1):
        lam = vals[i - 1]
        if beta < lam:
            raise PerronOrderViolated(f"step {i}: corner {beta!r} < eigenvalue {lam!r}")
        delta = offset(beta, lam, s.neg_sum, i)
        blk = general_block(beta, lam, lam + delta, split="symmetric")
        pp = perron_pair(blk)
        merge_into(M, i - 1, blk, pp, "symmetric")
        beta = blk.d
        if i >= 3:
            steps.append(Step(i, blk, pp))

    base = beta
    partial = 0.0
    for i in range(max(s.r, 1) + 1, n + 1):
        lam = vals[i - 1]
        partial += lam
        total = base + partial
        if total < 0:
            raise NotRealizableStep(i, beta, lam)
        blk = canonical_sym(beta, lam, total=total)
        pp = perron_pair(blk)
        merge_into(M, i - 1, blk, pp, "symmetric")
        beta = blk.d
        if i >= 3:
            steps.append(Step(i, blk, pp))
    return emit_nonnegative(M), ConstructionTrace("symmetric", steps, beta)


def _strongly_connected(A: np.ndarray) -> bool:
    if A.shape[0] == 1:
        return True
    ncomp, _ = connected_components(A > 0, directed=True, connection="strong")
    return ncomp == 1


def perron_vector(A: np.ndarray, *, max_iter: int | None = None) -> tuple[float, np.ndarray, int]:
    """Perron root and positive eigenvector (unit 1-norm) by shifted power iteration.

    The shift is the largest diagonal entry, or the largest entry when the
    diagonal is zero, which makes the iteration matrix primitive for
    irreducible ``A``. Iteration starts from the uniform vector.

    Raises
    ------
    NotPositive
        If ``A`` is reducible or the limit has an entry ``<= 1e-12``.
    NotConverged
        After ``max_iter`` (default ``100 * n``) iterations without meeting
        the tolerances.
    """
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    if np.any(A < 0):
        raise ValueError("perron_vector needs a nonnegative matrix")
    if not _strongly_connected(A):
        raise NotPositive("matrix is reducible; the Perron vector is not strictly positive")
    sigma = float(np.max(np.diag(A)))
    if sigma == 0.0:
        sigma = float(np.max(A))
    x = np.full(n, 1.0 / n)
    it = 0
    cap = 100 * n if max_iter is None else max_iter
    for it in range(1, cap + 1):
        y = A @ x + sigma * x
        total = y.sum()
        if total == 0.0:
            raise NotConverged("iterate collapsed to zero")
        y /= total
        diff = np.abs(y - x).sum()
        x = y
        if diff <= POWER_TOL:
            break
    Ax = A @ x
    rho = float(Ax.sum() / x.sum())
    resid = float(np.abs(Ax - rho * x).sum())
    if resid > 1e-12 * max(1.0, rho):
        raise NotConverged(f"residual {resid:.3e} after {it} iterations")
    if x.min() <= POSITIVE_TOL:
        raise NotPositive(f"Perron vector entry {x.min()!r} is not positive")
    return rho, x, it


def minc_transform(A: np.ndarray, rho: float, x: np.ndarray) -> np.ndarray:
    """Diagonal similarity ``D^-1 A D / rho`` with ``D = diag(x)``.

    Each row is divided by ``(A x)_i / x_i`` rather than ``rho``; the two agree
    for an exact eigenpair, and this way rows sum to 1 to machine precision
    even when ``x`` carries a small residual.
    """
    A = np.asarray(A, dtype=float)
    x = np.asarray(x, dtype=float)
    if rho <= 0:
        raise BadEigenpair(f"rho must be positive, got {rho!r}")
    if np.any(x <= 0):
        raise BadEigenpair("x must be strictly positive")
    Ax = A @ x
    resid = np.abs(Ax - rho * x).sum() / np.abs(x).sum()
    if resid > 1e-10 * max(1.0, rho):
        raise BadEigenpair(f"residual {resid:.3e} too large for an eigenpair")
    return A * x[None, :] / Ax[:, None]


def power_iteration_budget(A: np.ndarray, s: Spectrum) -> int:
    """Iteration cap for ``perron_vector`` on a matrix with known spectrum ``s``.

    The shifted iteration contracts by ``(lam_2 + sigma) / (lam_1 + sigma)``
    per step, so a small spectral gap needs more than the default ``100 n``.
    """
    n = A.shape[0]
    base = 100 * n
    if n == 1:
        return base
    sigma = float(np.max(np.diag(A))) or float(np.max(A))
    lam1 = s.values[0]
    second = max(abs(v + sigma) for v in s.values[1:])
    ratio = second / (lam1 + sigma)
    if ratio >= 1.0:
        return base
    need = int(np.ceil(np.log(POWER_TOL / n) / np.log(ratio))) if ratio > 0 else 1
    return min(max(base, 2 * need), MAX_POWER_ITER)


def construct_stochastic(s: Spectrum | Sequence[float]) -> StochasticResult:
    """Row-stochastic matrix whose spectrum is ``s`` divided by its leading value."""
    s = make_spectrum(s)
    norm = normalize_spectrum(s)
    A, trace = construct_irreducible(norm)
    try:
        rho, x, iters = perron_vector(A, max_iter=power_iteration_budget(A, norm))
    except NotPositive as exc:
        raise IrreducibilityLost(str(exc)) from exc
    S = emit_nonnegative(minc_transform(A, rho, x))
    return StochasticResult(S=S, scale=s.values[0], perron_vector=x, iterations=iters, nonnegative=A, trace=trace)
