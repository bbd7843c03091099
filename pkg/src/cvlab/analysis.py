"""Divisor sweeps and headline-claim checks.

Minimizers of the MSE/covariance over the fold count, covariance
monotonicity in the fold size, the CV-vs-holdout gap ratio, and the
normalized minimax table.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from . import config
from .asymptotics import leading_term
from .exact import CovarianceQuery, PrecisionMode, exact_fold_covariance

__all__ = [
    "SweepRow",
    "sweep",
    "argmin_mse",
    "argmin_cov",
    "gap_ratio",
    "monotonicity_check",
    "minimax_table",
    "divisors",
]

Number = Union[Fraction, float]


def divisors(n: int) -> list[int]:
    """All divisors of n, ascending, by trial division up to sqrt(n)."""
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


@dataclass(frozen=True)
class SweepRow:
    n: int
    k: int
    m: int
    cov_exact: Number
    mse_exact: Number
    cov_leading: Optional[float]  # None at m = 1, where the formula degenerates
    mse_holdout: Number
    rel_err_leading: Optional[float]


def _default_mode(n: int) -> PrecisionMode:
    return (
        PrecisionMode.EXACT_RATIONAL
        if n <= config.EXACT_N_CAP
        else PrecisionMode.LOG_SPACE_FLOAT
    )


def sweep(n: int, precision_mode: Optional[PrecisionMode] = None) -> list[SweepRow]:
    """One row per divisor k >= 2 of n, ascending in k."""
    if n < 2:
        raise ValueError("n must be at least 2")
    mode = precision_mode or _default_mode(n)
    rows = []
    for k in divisors(n):
        if k < 2:
            continue
        m = n // k
        cov = exact_fold_covariance(CovarianceQuery(n, m, mode))
        if mode is PrecisionMode.EXACT_RATIONAL:
            mse = Fraction(k - 1, k) * cov + Fraction(1, 4 * n)
            holdout = Fraction(1, 4 * n)
        else:
            mse = (k - 1) / k * cov + 1.0 / (4 * n)
            holdout = 1.0 / (4 * n)
        if m >= 2:
            lead = leading_term(n, m)
            rel = abs(lead / float(cov) - 1.0)
        else:
            lead = rel = None
        rows.append(SweepRow(n, k, m, cov, mse, lead, holdout, rel))
    return rows


def _argmin(rows: list[SweepRow], key) -> tuple[set[int], Number]:
    best = min(key(r) for r in rows)
    ks = {r.k for r in rows if key(r) == best}
    return ks, best


def argmin_mse(n: int, precision_mode: Optional[PrecisionMode] = None) -> tuple[set[int], Number]:
    """All fold counts minimizing the exact CV MSE, plus the minimum.

    Ties are reported as the full set (n = 6 has a genuine exact {2, 3} tie).
    """
    if n % 2 != 0:
        raise ValueError("n must be even (k = 2 must be admissible)")
    return _argmin(sweep(n, precision_mode), lambda r: r.mse_exact)


def argmin_cov(n: int, precision_mode: Optional[PrecisionMode] = None) -> tuple[set[int], Number]:
    """All fold counts minimizing the fold covariance, plus the minimum."""
    if n % 3 != 0:
        raise ValueError("n must be a multiple of 3 (k = 3 must be admissible)")
    return _argmin(sweep(n, precision_mode), lambda r: r.cov_exact)


def gap_ratio(n: int, precision_mode: Optional[PrecisionMode] = None) -> float:
    """min_k MSE(n, k) divided by the size-n holdout MSE 1/(4n).

    Converges to 1 + 2/pi ~ 1.637.
    """
    if n % 2 != 0:
        raise ValueError("n must be even")
    _, best = argmin_mse(n, precision_mode)
    return float(best) * 4 * n


@dataclass(frozen=True)
class MonotonicityResult:
    holds: bool
    asserted: bool  # False below the asymptotic threshold: reported only
    first_violation: Optional[tuple[int, int]]  # (m1, m2) with Cov(m1) <= Cov(m2)


def monotonicity_check(
    n: int, n_threshold: int = config.MONOTONICITY_N_THRESHOLD
) -> MonotonicityResult:
    """Check strict covariance decrease over divisor fold sizes m <= n/3,
    and Cov(n, n/3) < Cov(n, n/2) when 6 | n.

    Below n_threshold the outcome is reported without being asserted (the
    statement is asymptotic).
    """
    mode = _default_mode(n)
    covs = {}
    for m in divisors(n):
        if 1 <= m <= n // 2 and (3 * m <= n or 2 * m == n):
            covs[m] = exact_fold_covariance(CovarianceQuery(n, m, mode))
    ms = sorted(m for m in covs if 3 * m <= n)
    violation = None
    for m1, m2 in zip(ms, ms[1:]):
        if not covs[m1] > covs[m2]:
            violation = (m1, m2)
            break
    if violation is None and n % 6 == 0:
        if not covs[n // 3] < covs[n // 2]:
            violation = (n // 3, n // 2)
    return MonotonicityResult(
        holds=violation is None,
        asserted=n >= n_threshold,
        first_violation=violation,
    )


@dataclass(frozen=True)
class MinimaxRow:
    n: int
    k_star: set[int]
    min_mse: Number
    min_mse_n: float  # approaches 1/4 + 1/(2 pi)
    min_mse_n_over_sqrt_k: float


def minimax_table(n_list: list[int]) -> list[MinimaxRow]:
    """Normalized minimum-MSE table; min_mse * n stabilizes near
    1/4 + 1/(2 pi), exhibiting the sqrt(k)/n law."""
    rows = []
    for n in n_list:
        ks, best = argmin_mse(n)
        k_rep = min(ks)
        rows.append(
            MinimaxRow(
                n=n,
                k_star=ks,
                min_mse=best,
                min_mse_n=float(best) * n,
                min_mse_n_over_sqrt_k=float(best) * n / math.sqrt(k_rep),
            )
        )
    return rows
