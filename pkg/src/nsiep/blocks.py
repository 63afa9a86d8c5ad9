"""2x2 nonnegative building blocks with a prescribed eigenvalue pair.

Every block ``[[a, b], [c, d]]`` satisfies ``a + d = lam1 + lam2`` and
``a*d - b*c = lam1*lam2``. Its Perron eigenpair is known in closed form, so
no eigensolver is needed during construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NotRealizablePair, ParamOutOfRange

SPLITS = ("symmetric", "unit_subdiagonal")


@dataclass(frozen=True)
class Block2:
    a: float
    b: float
    c: float
    d: float
    lam1: float
    lam2: float
    symmetric: bool = False

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=float)

    @property
    def trace(self) -> float:
        return self.a + self.d

    @property
    def det(self) -> float:
        return self.a * self.d - self.b * self.c


@dataclass(frozen=True)
class PerronPair:
    value: float
    vector: tuple[float, float]


def _check_order(lam1: float, lam2: float) -> None:
    if lam1 < lam2:
        raise ParamOutOfRange(f"need lam1 >= lam2, got {lam1!r} < {lam2!r}")


def admissible_interval(lam1: float, lam2: float) -> tuple[float, float]:
    """Range of the top-left entry ``a`` that keeps the block nonnegative."""
    _check_order(lam1, lam2)
    if lam2 >= 0:
        return lam2, lam1
    if lam1 + lam2 < 0:
        raise NotRealizablePair(f"lam1 + lam2 = {lam1 + lam2!r} < 0 with lam2 < 0")
    return 0.0, lam1 + lam2


def general_block(lam1: float, lam2: float, a: float, split: str = "symmetric") -> Block2:
    """Block with top-left entry ``a`` and eigenvalues ``{lam1, lam2}``.

    The off-diagonal product is ``bc = (a - lam2) * (lam1 - a)``, which is the
    usual ``a*(lam1 + lam2 - a) - lam1*lam2`` in factored form; it stays
    nonnegative on the whole admissible interval without cancellation.
    ``split`` decides how ``bc`` is shared between ``b`` and ``c``.
    """
    if split not in SPLITS:
        raise ValueError(f"split must be one of {SPLITS}, got {split!r}")
    lo, hi = admissible_interval(lam1, lam2)
    slack = 1e-12 * max(1.0, abs(lam1))
    if not (lo - slack <= a <= hi + slack):
        raise ParamOutOfRange(f"a = {a!r} outside [{lo!r}, {hi!r}]")
    a = min(max(a, lo), hi)
    d = lam1 + lam2 - a
    bc = (a - lam2) * (lam1 - a)
    if -1e-15 <= bc < 0:
        bc = 0.0
    if split == "symmetric":
        b = c = math.sqrt(bc)
    elif bc > 0:
        b, c = bc, 1.0
    else:
        b = c = 0.0
    return Block2(a, b, c, d, lam1, lam2, symmetric=(b == c))


def canonical_nonsym(lam1: float, lam2: float, *, total: float | None = None) -> Block2:
    """``diag(lam2, lam1)`` if ``lam2 >= 0``, else ``[[0, -lam1*lam2], [1, lam1 + lam2]]``.

    ``total`` overrides the computed ``lam1 + lam2`` for callers that track
    the trace as a running sum.
    """
    _check_order(lam1, lam2)
    if lam2 >= 0:
        return Block2(lam2, 0.0, 0.0, lam1, lam1, lam2, symmetric=True)
    d = lam1 + lam2 if total is None else total
    if d < 0:
        raise NotRealizablePair(f"lam1 + lam2 = {d!r} < 0 with lam2 < 0")
    return Block2(0.0, -lam1 * lam2, 1.0, d, lam1, lam2, symmetric=False)


def canonical_sym(lam1: float, lam2: float, *, total: float | None = None) -> Block2:
    """Symmetric counterpart of :func:`canonical_nonsym`; off-diagonal ``sqrt(-lam1*lam2)``."""
    _check_order(lam1, lam2)
    if lam2 >= 0:
        return Block2(lam2, 0.0, 0.0, lam1, lam1, lam2, symmetric=True)
    d = lam1 + lam2 if total is None else total
    if d < 0:
        raise NotRealizablePair(f"lam1 + lam2 = {d!r} < 0 with lam2 < 0")
    b = math.sqrt(-lam1 * lam2)
    return Block2(0.0, b, b, d, lam1, lam2, symmetric=True)


def perron_pair(blk: Block2) -> PerronPair:
    """Unit nonnegative eigenvector of ``blk`` for ``blk.lam1``, in closed form."""
    lam = blk.lam1
    if blk.b > 0:
        x, y = blk.b, lam - blk.a
    elif blk.c > 0:
        x, y = lam - blk.d, blk.c
    elif abs(blk.d - lam) <= abs(blk.a - lam):
        # diagonal block; ties (lam1 == lam2) take the bottom position
        x, y = 0.0, 1.0
    else:
        x, y = 1.0, 0.0
    x, y = max(x, 0.0), max(y, 0.0)
    norm = math.hypot(x, y)
    return PerronPair(lam, (x / norm, y / norm))
