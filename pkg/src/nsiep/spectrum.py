"""Target spectra and the realizability conditions checked before construction.

A :class:`Spectrum` is an immutable, descending-sorted list of real
eigenvalues. Zero counts as nonnegative. The condition checks here are
pure functions of the stored values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import CheckInconclusive, EmptyInput, NonFiniteEntry

TOL_COND = 1e-9
LOEWY_K_CAP = 16


@dataclass(frozen=True)
class Spectrum:
    """Descending-sorted real eigenvalues.

    ``r`` is the 1-based index of the last nonnegative value (0 when every
    value is negative) and ``neg_sum`` the left-to-right sum of the
    remaining negative values.
    """

    values: tuple[float, ...]
    n: int = field(init=False)
    r: int = field(init=False)
    neg_sum: float = field(init=False)

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        if not vals:
            raise EmptyInput("spectrum must contain at least one value")
        if any(a < b for a, b in zip(vals, vals[1:])):
            raise ValueError("Spectrum values must be sorted descending; use make_spectrum")
        r = sum(1 for v in vals if v >= 0)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "n", len(vals))
        object.__setattr__(self, "r", r)
        # sequential sum; the composer accumulates its corner in the same order
        object.__setattr__(self, "neg_sum", sum(vals[r:], 0.0))

    def __len__(self):
        return self.n

    def __iter__(self):
        return iter(self.values)

    @property
    def positive(self) -> tuple[float, ...]:
        return self.values[: self.r]

    @property
    def negative(self) -> tuple[float, ...]:
        return self.values[self.r :]


def make_spectrum(raw: Iterable[float] | Spectrum) -> Spectrum:
    """Validate ``raw`` and return it as a sorted :class:`Spectrum`.

    Equal values keep their input order (stable sort).
    """
    if isinstance(raw, Spectrum):
        return raw
    vals = [float(v) for v in raw]
    if not vals:
        raise EmptyInput("spectrum must contain at least one value")
    for i, v in enumerate(vals):
        if not math.isfinite(v):
            raise NonFiniteEntry(f"entry {i} is not finite: {v!r}")
    vals.sort(key=lambda v: -v)
    return Spectrum(tuple(vals))


def default_loewy_k(n: int) -> int:
    return min(2 * n, LOEWY_K_CAP)


def moments(s: Spectrum, K: int) -> list[float]:
    """Power sums ``s_k = sum(lam**k)`` for ``k = 1..K``.

    Overflowing powers come back as ``inf``/``nan`` instead of raising.
    """
    if K < 1:
        raise ValueError("K must be >= 1")
    vals = np.asarray(s.values, dtype=float)
    out = []
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(1, K + 1):
            powers = vals**k
            if np.all(np.isfinite(powers)):
                try:
                    out.append(math.fsum(powers.tolist()))
                except OverflowError:
                    out.append(math.inf)
            else:
                out.append(float(np.sum(powers)))
    return out


def _abs_moments(s: Spectrum, K: int) -> list[float]:
    vals = np.abs(np.asarray(s.values, dtype=float))
    with np.errstate(over="ignore"):
        return [float(np.sum(vals**k)) for k in range(1, K + 1)]


def check_loewy(s: Spectrum, K: int) -> tuple[bool, list[tuple[int, int]]]:
    """Check the moment inequalities ``s_k**m <= n**(m-1) * s_km`` for ``km <= K``.

    Also checks ``s_k >= 0`` for every ``k <= K``; a failure there is
    reported as the pair ``(k, 0)``.

    Raises
    ------
    CheckInconclusive
        If a moment or one of the compared quantities overflows.
    """
    sk = moments(s, K)
    scale = _abs_moments(s, K)
    if not all(math.isfinite(v) for v in sk):
        raise CheckInconclusive(f"moments overflow for K={K}")
    n = s.n
    violations: list[tuple[int, int]] = []
    for k in range(1, K + 1):
        if sk[k - 1] < -TOL_COND * max(1.0, scale[k - 1]):
            violations.append((k, 0))
    for k in range(1, K + 1):
        for m in range(2, K // k + 1):
            try:
                lhs = sk[k - 1] ** m
                rhs = float(n) ** (m - 1) * sk[k * m - 1]
            except OverflowError as exc:
                raise CheckInconclusive(f"overflow at k={k}, m={m}") from exc
            if not (math.isfinite(lhs) and math.isfinite(rhs)):
                raise CheckInconclusive(f"overflow at k={k}, m={m}")
            if lhs - rhs > TOL_COND * max(1.0, abs(lhs)):
                violations.append((k, m))
    return not violations, violations


def check_suleimanova(s: Spectrum) -> bool:
    """All values after the first are negative and the total is nonnegative."""
    if s.r != 1:
        return False
    # values[0] + neg_sum is the total here; same arithmetic as the weak check
    return s.values[0] + s.neg_sum >= 0


def weak_margin(s: Spectrum) -> float:
    return s.values[0] + s.neg_sum


def check_weak_condition(s: Spectrum) -> bool:
    """Largest value plus the sum of all negative values is nonnegative.

    Exact comparison: a margin of exactly zero is realizable.
    """
    return weak_margin(s) >= 0


@dataclass(frozen=True)
class ConditionReport:
    moments: list[float]
    loewy_ok: bool
    loewy_violations: list[tuple[int, int]]
    suleimanova_ok: bool
    weak_ok: bool
    trace_nonneg: bool
    weak_margin: float
    loewy_k: int

    def to_dict(self) -> dict:
        return {
            "moments": list(self.moments),
            "loewy_ok": self.loewy_ok,
            "loewy_violations": [list(p) for p in self.loewy_violations],
            "loewy_k": self.loewy_k,
            "suleimanova_ok": self.suleimanova_ok,
            "weak_ok": self.weak_ok,
            "weak_margin": self.weak_margin,
            "trace_nonneg": self.trace_nonneg,
        }


def check_conditions(s: Spectrum | Sequence[float], K: int | None = None) -> ConditionReport:
    """Run every condition check and collect the results.

    When the moments overflow at the requested ``K`` the Loewy check falls
    back to the largest ``K`` that stays finite; ``loewy_k`` records it.
    """
    s = make_spectrum(s)
    K = default_loewy_k(s.n) if K is None else K
    k_used = K
    while True:
        try:
            ok, viol = check_loewy(s, k_used)
            break
        except CheckInconclusive:
            if k_used == 1:
                raise
            k_used -= 1
    mom = moments(s, K)
    s1 = mom[0]
    return ConditionReport(
        moments=mom,
        loewy_ok=ok,
        loewy_violations=viol,
        suleimanova_ok=check_suleimanova(s),
        weak_ok=check_weak_condition(s),
        trace_nonneg=s1 >= -TOL_COND * max(1.0, _abs_moments(s, 1)[0]),
        weak_margin=weak_margin(s),
        loewy_k=k_used,
    )


def random_realizable(n: int, rng: np.random.Generator, low: float = -10.0, high: float = 10.0) -> Spectrum:
    """Draw ``n`` values uniformly from ``[low, high]`` and lift the largest.

    The leading value becomes ``max(max(rest), -sum(negative rest), 0)`` so
    the weak condition holds; when the lift is active the margin is exactly
    zero in floating point.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rest = sorted(rng.uniform(low, high, size=n - 1).tolist(), reverse=True)
    neg = sum((v for v in rest if v < 0), 0.0)
    lead = max(rest[0] if rest else 0.0, -neg, 0.0)
    return make_spectrum([lead] + rest)
