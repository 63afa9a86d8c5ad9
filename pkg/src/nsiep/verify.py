"""Independent certification of constructed matrices.

Nothing here knows how matrices are built. Symmetric matrices are certified
by a Jacobi eigensolver; nonsymmetric ones by inverse-iteration residuals
for each prescribed eigenvalue plus trace-of-power (moment) identities.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.linalg as sla

from .errors import DimensionMismatch, NotConverged, NotSymmetric, SingularFactorization
from .spectrum import Spectrum, make_spectrum

JACOBI_TOL = 1e-14
JACOBI_MAX_SWEEPS = 30
MOMENT_SKIP = 1e12
ROW_TOL = 1e-10
ENTRY_TOL = 1e-12


# --- Jacobi ------------------------------------------------------------------

def round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Tournament ordering: ``n - 1`` rounds (``n`` for odd ``n``) of disjoint pairs.

    Every unordered pair ``(p, q)`` appears exactly once per sweep, so one
    sweep is a full cyclic Jacobi sweep whose rotations within a round
    commute and can be applied together.
    """
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        p, q = [], []
        for i in range(m // 2):
            a, b = players[i], players[m - 1 - i]
            if a < n and b < n:
                p.append(min(a, b))
                q.append(max(a, b))
        rounds.append((np.array(p, dtype=int), np.array(q, dtype=int)))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def off_norm(A: np.ndarray) -> float:
    return float(np.linalg.norm(A - np.diag(np.diag(A))))


def jacobi_sweep(A: np.ndarray, rounds=None) -> np.ndarray:
    """One cyclic sweep of Jacobi rotations on a symmetric matrix (returns a new array)."""
    A = np.array(A, dtype=float)
    n = A.shape[0]
    if rounds is None:
        rounds = round_robin(n)
    for p, q in rounds:
        apq = A[p, q]
        if not apq.any():
            continue
        app = A[p, p]
        aqq = A[q, q]
        # t = tan(theta) of the smaller rotation angle, written without
        # dividing by apq; t = 0 wherever apq = 0
        two = 2.0 * apq
        diff = aqq - app
        den = diff + np.copysign(np.hypot(diff, two), diff)
        t = np.divide(two, den, out=np.zeros_like(two), where=den != 0)
        c = 1.0 / np.sqrt(1.0 + t * t)
        s = t * c
        rp = A[p]
        rq = A[q]
        A[p] = c[:, None] * rp - s[:, None] * rq
        A[q] = s[:, None] * rp + c[:, None] * rq
        cp = A[:, p]
        cq = A[:, q]
        A[:, p] = cp * c - cq * s
        A[:, q] = cp * s + cq * c
        A[p, p] = app - t * apq
        A[q, q] = aqq + t * apq
        A[p, q] = 0.0
        A[q, p] = 0.0
    return 0.5 * (A + A.T)


def jacobi_eigenvalues(A: np.ndarray, *, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS) -> np.ndarray:
    """Eigenvalues of a symmetric matrix, sorted descending.

    Sweeps stop once the off-diagonal Frobenius norm is at most
    ``tol * ||A||_F``.
    """
    A = np.array(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    norm = float(np.linalg.norm(A))
    if np.linalg.norm(A - A.T) > 1e-12 * norm:
        raise NotSymmetric("matrix is not symmetric")
    if norm == 0.0:
        return np.zeros(A.shape[0])
    A = 0.5 * (A + A.T)
    rounds = round_robin(A.shape[0])
    for _ in range(max_sweeps):
        if off_norm(A) <= tol * norm:
            break
        A = jacobi_sweep(A, rounds)
    else:
        if off_norm(A) > tol * norm:
            raise NotConverged(f"Jacobi: off-diagonal norm {off_norm(A):.3e} after {max_sweeps} sweeps")
    return np.sort(np.diag(A))[::-1]


# --- residuals and moments ----------------------------------------------------

def _lu(M: np.ndarray, *, repair: bool = False):
    """LU with partial pivoting; ``repair`` swaps exact zero pivots for ``eps * ||M||_1``."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", sla.LinAlgWarning)
        lu, piv = sla.lu_factor(M, check_finite=False)
    diag = np.diag(lu)
    zero = diag == 0
    if zero.any():
        if not repair:
            raise SingularFactorization("zero pivot")
        tiny = np.finfo(float).eps * max(1.0, float(np.linalg.norm(M, 1)))
        lu[np.diag_indices_from(lu)] = np.where(zero, tiny, diag)
    return lu, piv


def eigen_residual(A: np.ndarray, lam: float, *, max_iter: int = 50) -> float:
    """Smallest ``||A v - lam v|| / ||v||`` reached by inverse iteration near ``lam``.

    The shift is ``lam + eps`` with ``eps = 1e-10 * max(1, |lam|)``; an exactly
    singular factorization is retried once with ``2 * eps``. If that is
    singular too, the shift is an eigenvalue to working precision and the
    zero pivot is replaced by a tiny one, as LAPACK's inverse iteration does.
    """
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    eps = 1e-10 * max(1.0, abs(lam))
    eye = np.eye(n)
    try:
        fac = _lu(A - (lam + eps) * eye)
    except SingularFactorization:
        fac = _lu(A - (lam + 2 * eps) * eye, repair=True)
    # fixed generic start; a constant vector can be orthogonal to the target
    v = np.random.default_rng(12345).uniform(0.5, 1.5, size=n)
    v /= np.linalg.norm(v)
    # non-normal matrices make the residual oscillate; keep the best iterate
    floor = 16 * np.finfo(float).eps * max(1.0, float(np.linalg.norm(A, 1)))
    best = math.inf
    stale = 0
    for _ in range(max_iter):
        w = sla.lu_solve(fac, v, check_finite=False)
        nw = np.linalg.norm(w)
        if not np.isfinite(nw) or nw == 0.0:
            break
        v = w / nw
        r = A @ v - lam * v
        res = math.sqrt(float(r @ r))
        if res < best:
            best, stale = res, 0
        else:
            stale += 1
        if best <= floor or stale >= 3:
            break
    return best


def moment_check(A: np.ndarray, s: Spectrum | Sequence[float], K: int) -> list[float | None]:
    """Relative errors ``|trace(A^k) - sum(lam^k)| / max(1, n * lam_max^k)``, ``k = 1..K``.

    Entries for which ``lam_max^k`` exceeds ``1e12`` are ``None`` (skipped).
    """
    if not 1 <= K <= 8:
        raise ValueError("K must be in 1..8")
    s = make_spectrum(s)
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    vals = np.asarray(s.values)
    top = float(np.max(np.abs(vals)))
    errors: list[float | None] = []
    P = A
    for k in range(1, K + 1):
        if k > 1:
            if k == K:
                tr = float(np.sum(P * A.T))
            else:
                P = P @ A
                tr = float(np.trace(P))
        else:
            tr = float(np.trace(A))
        if top**k > MOMENT_SKIP:
            errors.append(None)
            continue
        target = math.fsum((vals**k).tolist())
        errors.append(abs(tr - target) / max(1.0, n * top**k))
    return errors


# --- structure ----------------------------------------------------------------

def stochastic_check(A: np.ndarray) -> tuple[bool, float, float]:
    A = np.asarray(A, dtype=float)
    max_row_error = float(np.max(np.abs(A.sum(axis=1) - 1.0)))
    min_entry = float(A.min())
    return (max_row_error <= ROW_TOL and min_entry >= -ENTRY_TOL), max_row_error, min_entry


def _reaches_all(adj: np.ndarray) -> bool:
    n = adj.shape[0]
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    frontier = seen.copy()
    while frontier.any():
        nxt = adj[frontier].any(axis=0) & ~seen
        seen |= nxt
        frontier = nxt
    return bool(seen.all())


def irreducibility_check(A: np.ndarray, tol: float | None = None) -> bool:
    """Strong connectivity of the graph with edges ``i -> j`` where ``A[i, j] > tol``."""
    A = np.asarray(A, dtype=float)
    if A.shape[0] == 1:
        return True
    if tol is None:
        tol = 1e-12 * float(np.max(A))
    adj = A > tol
    return _reaches_all(adj) and _reaches_all(adj.T)


# --- report -------------------------------------------------------------------

def match_spectra(computed: Sequence[float], prescribed: Sequence[float]) -> float:
    """Max difference after pairing both lists in sorted order."""
    a = np.sort(np.asarray(computed, dtype=float))
    b = np.sort(np.asarray(prescribed, dtype=float))
    if a.shape != b.shape:
        raise DimensionMismatch(f"{a.size} computed vs {b.size} prescribed eigenvalues")
    return float(np.max(np.abs(a - b))) if a.size else 0.0


def is_symmetric(A: np.ndarray) -> bool:
    return bool(np.linalg.norm(A - A.T) <= 1e-12 * np.linalg.norm(A))


@dataclass(frozen=True)
class VerificationReport:
    spectrum_match: bool
    max_eigen_error: float
    moment_errors: list[float | None]
    nonnegative: bool
    symmetric: bool
    stochastic_rows_ok: bool | None
    irreducible: bool | None
    residuals: dict[float, float]
    tol: float

    @property
    def ok(self) -> bool:
        return self.spectrum_match and self.nonnegative and self.stochastic_rows_ok is not False

    def to_dict(self) -> dict:
        return {
            "spectrum_match": self.spectrum_match,
            "max_eigen_error": self.max_eigen_error,
            "tol": self.tol,
            "moment_errors": list(self.moment_errors),
            "nonnegative": self.nonnegative,
            "symmetric": self.symmetric,
            "stochastic_rows_ok": self.stochastic_rows_ok,
            "irreducible": self.irreducible,
            "residuals": [[lam, res] for lam, res in self.residuals.items()],
        }


def verify_matrix(
    A: np.ndarray,
    s: Spectrum | Sequence[float],
    *,
    tol: float = 1e-8,
    stochastic: bool = False,
    K: int | None = None,
) -> VerificationReport:
    """Check that ``A`` is nonnegative with spectrum ``s``.

    ``max_eigen_error`` is the sorted-pairing distance of Jacobi eigenvalues
    to ``s`` for symmetric ``A``; otherwise the largest of the scaled
    inverse-iteration residuals and the relative moment errors. It is
    measured against ``tol * max(1, |lam_max|)`` for eigenvalue distances.
    """
    s = make_spectrum(s)
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"matrix must be square, got shape {A.shape}")
    n = A.shape[0]
    if n != s.n:
        raise DimensionMismatch(f"{n}x{n} matrix vs {s.n} eigenvalues")
    K = min(n, 6) if K is None else K
    top = max(1.0, max(abs(v) for v in s.values))

    sym = is_symmetric(A)
    residuals = {lam: eigen_residual(A, lam) for lam in sorted(set(s.values), reverse=True)}
    moment_errors = moment_check(A, s, K)
    if sym:
        err = match_spectra(jacobi_eigenvalues(A), s.values) / top
    else:
        scaled = [res / max(1.0, abs(lam)) for lam, res in residuals.items()]
        err = max(scaled + [e for e in moment_errors if e is not None])

    rows_ok = irreducible = None
    if stochastic:
        rows_ok = stochastic_check(A)[0]
        irreducible = irreducibility_check(A)
    return VerificationReport(
        spectrum_match=err <= tol,
        max_eigen_error=err,
        moment_errors=moment_errors,
        nonnegative=bool(A.min() >= -ENTRY_TOL * max(1.0, float(np.max(np.abs(A))))),
        symmetric=sym,
        stochastic_rows_ok=rows_ok,
        irreducible=irreducible,
        residuals=residuals,
        tol=tol,
    )
