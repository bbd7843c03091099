"""Exact evaluation of the closed-form cross-validation quantities.

Everything here is a pure function of its arguments.  Rational results are
`fractions.Fraction`; the log-space float path exists for sample sizes where
2^n denominators are impractical.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from . import config

__all__ = [
    "FoldScheme",
    "PrecisionMode",
    "CovarianceQuery",
    "binomial",
    "log_binomial",
    "exact_fold_covariance",
    "exact_cv_mse",
    "endpoint_cov_m1",
    "endpoint_cov_half",
    "conditional_cov_identity",
    "central_binomial_mass",
    "hypergeom_weight_moments",
]

LN2 = math.log(2.0)


@dataclass(frozen=True)
class FoldScheme:
    """Validated (n, k, m) triple for an equal-fold CV layout."""

    n: int
    k: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be a positive integer")
        if self.k < 2:
            raise ValueError("fold count k must be at least 2")
        if self.k > self.n:
            raise ValueError("fold count k cannot exceed n")
        if self.n % self.k != 0:
            raise ValueError(f"k must divide n (got n={self.n}, k={self.k})")

    @property
    def m(self) -> int:
        return self.n // self.k


class PrecisionMode(enum.Enum):
    EXACT_RATIONAL = "rational"
    LOG_SPACE_FLOAT = "log"


@dataclass(frozen=True)
class CovarianceQuery:
    """Fold-covariance evaluation request for a given (n, m)."""

    n: int
    m: int
    precision_mode: PrecisionMode = PrecisionMode.EXACT_RATIONAL

    def __post_init__(self):
        if self.m < 1 or 2 * self.m > self.n:
            raise ValueError(f"need 1 <= m <= n/2 (got n={self.n}, m={self.m})")
        if self.n % self.m != 0:
            raise ValueError(f"m must divide n (got n={self.n}, m={self.m})")
        if (
            self.precision_mode is PrecisionMode.EXACT_RATIONAL
            and self.n > config.EXACT_N_CAP
        ):
            raise ValueError(
                f"rational mode capped at n <= {config.EXACT_N_CAP}; "
                "use log-space mode for larger n"
            )


def binomial(r: int, t: int) -> int:
    """C(r, t), with C(r, t) = 0 for t < 0 or t > r.

    The out-of-range convention matches the identity C(0, t) = 1{t=0} used
    by the endpoint formulas; it keeps every summation total.
    """
    if r < 0:
        raise ValueError("r must be nonnegative")
    if t < 0 or t > r:
        return 0
    return math.comb(r, t)


def log_binomial(r: int, t: int) -> float:
    """ln C(r, t); -inf out of range.

    For r <= LOG_EXACT_CAP the exact integer binomial is computed and logged
    (error ~1 ulp of the result); beyond that a log-gamma expansion is used.
    """
    if r < 0:
        raise ValueError("r must be nonnegative")
    if t < 0 or t > r:
        return -math.inf
    if r <= config.LOG_EXACT_CAP:
        return math.log(math.comb(r, t))
    return math.lgamma(r + 1) - math.lgamma(t + 1) - math.lgamma(r - t + 1)


def _covariance_numerator(n: int, m: int) -> int:
    """Integer numerator of Cov(n, m) over 2^n."""
    N = n - 2 * m
    ell = (n - m) // 2
    total = 0
    for j in range(m):
        c = binomial(N, ell - j)
        if c:
            total += binomial(m - 1, j) ** 2 * c
    return total


def _covariance_log_space(n: int, m: int) -> float:
    """Cov(n, m) via compensated summation of exponentials of log terms.

    Terms are accumulated in increasing-j order with a Kahan error term, so
    the result is deterministic and order-independent.
    """
    N = n - 2 * m
    ell = (n - m) // 2
    lo = max(0, ell - N)
    hi = min(m - 1, ell)
    if hi < lo:
        return 0.0
    js = range(lo, hi + 1)
    if n <= config.LOG_EXACT_CAP:
        logs = [
            2.0 * log_binomial(m - 1, j) + log_binomial(N, ell - j) for j in js
        ]
    else:
        import numpy as np
        from scipy.special import gammaln

        jarr = np.arange(lo, hi + 1, dtype=np.float64)
        lb_m = (
            gammaln(m)
            - gammaln(jarr + 1.0)
            - gammaln(m - jarr)
        )
        lb_N = (
            gammaln(N + 1.0)
            - gammaln(ell - jarr + 1.0)
            - gammaln(N - ell + jarr + 1.0)
        )
        logs = (2.0 * lb_m + lb_N).tolist()
    peak = max(logs)
    total = 0.0
    comp = 0.0
    for lg in logs:
        term = math.exp(lg - peak)
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return math.exp(peak - n * LN2) * total


def exact_fold_covariance(q: CovarianceQuery):
    """Fold covariance Cov(n, m) between two hold-out loss estimates.

    Cov(n, m) = 2^{-n} sum_{j=0}^{m-1} C(m-1, j)^2 C(n-2m, floor((n-m)/2) - j)

    Returns a Fraction in rational mode, a float in log-space mode.
    """
    if q.precision_mode is PrecisionMode.EXACT_RATIONAL:
        return Fraction(_covariance_numerator(q.n, q.m), 2**q.n)
    return _covariance_log_space(q.n, q.m)


def exact_cv_mse(
    s: FoldScheme, precision_mode: PrecisionMode = PrecisionMode.EXACT_RATIONAL
) -> Fraction | float:
    """MSE of the k-fold CV estimator for Majority under uniform labels:
    ((k-1)/k) Cov(n, m) + 1/(4n)."""
    cov = exact_fold_covariance(CovarianceQuery(s.n, s.m, precision_mode))
    if precision_mode is PrecisionMode.EXACT_RATIONAL:
        return Fraction(s.k - 1, s.k) * cov + Fraction(1, 4 * s.n)
    return (s.k - 1) / s.k * cov + 0.25 / s.n


def endpoint_cov_m1(n: int) -> Fraction:
    """Cov(n, 1) = 2^{-n} C(n-2, floor((n-1)/2))."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return Fraction(binomial(n - 2, (n - 1) // 2), 2**n)


def endpoint_cov_half(n: int) -> Fraction:
    """Cov(n, n/2) = (2^{-l} C(l, r))^2 / 4 with l = n/2 - 1, r = floor(n/4)."""
    if n < 2 or n % 2 != 0:
        raise ValueError("n must be an even integer >= 2")
    ell = n // 2 - 1
    r = n // 4
    q = Fraction(binomial(ell, r), 2**ell)
    return q * q / 4


def conditional_cov_identity(m: int, a: int) -> tuple[Fraction, Fraction]:
    """Both sides of Cov(X_m, 1{X_m >= a+1}) = (m/4) P(X_{m-1} = a),
    X_r ~ Bin(r, 1/2).

    The left side is computed directly from the Bin(m, 1/2) mass function;
    the two sides agree exactly for every integer a.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    den = 2**m
    # E[X 1{X >= a+1}] and P(X >= a+1)
    e_num = sum(x * binomial(m, x) for x in range(max(a + 1, 0), m + 1))
    p_num = sum(binomial(m, x) for x in range(max(a + 1, 0), m + 1))
    lhs = Fraction(e_num, den) - Fraction(m, 2) * Fraction(p_num, den)
    rhs = Fraction(m, 4) * Fraction(binomial(m - 1, a), 2 ** (m - 1))
    return lhs, rhs


def central_binomial_mass(r: int) -> Fraction:
    """S_r = 2^{-2r} C(2r, r)."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    return Fraction(binomial(2 * r, r), 4**r)


def central_binomial_mass_float(r: int) -> float:
    """S_r in floating point, via the log path for large r."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    return math.exp(log_binomial(2 * r, r) - 2 * r * LN2)


def hypergeom_weight_moments(r: int) -> tuple[Fraction, Fraction]:
    """Mean and variance of J with P(J=j) proportional to C(r, j)^2,
    i.e. J ~ Hypergeom(2r, r, r): mean r/2, variance r^2 / (4(2r-1)).

    r = 0 returns (0, 0) (J is deterministically 0 there).
    """
    if r < 0:
        raise ValueError("r must be nonnegative")
    if r == 0:
        return Fraction(0), Fraction(0)
    return Fraction(r, 2), Fraction(r * r, 4 * (2 * r - 1))
