"""Independent brute-force oracles for the CV statistics.

Two routes validate every closed form: exhaustive enumeration of all 2^n
label vectors (the assumption-free referee), and an exact count-based
convolution over fold label counts.  All moments come out as exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import config
from .exact import FoldScheme, binomial
from .sim import AlgorithmSpec, TiePolicy

__all__ = [
    "OracleResult",
    "bitstring_cv_oracle",
    "count_cv_oracle",
    "factorization_check",
    "empirical_error_mse",
    "holdout_mse",
]


@dataclass(frozen=True)
class OracleResult:
    mse: Fraction
    fold_covariance: Fraction
    fold_variance: Fraction
    estimator_mean: Fraction


def _trained_bits(comp_counts: np.ndarray, train_size: int, tie_policy) -> np.ndarray:
    """Majority output bit per training set, given its label count."""
    if tie_policy is TiePolicy.TO_ZERO:
        return 2 * comp_counts > train_size
    return 2 * comp_counts >= train_size


def bitstring_cv_oracle(s: FoldScheme, algorithm: AlgorithmSpec) -> OracleResult:
    """Exact CV moments by enumerating all 2^n label vectors.

    Folds are consecutive index blocks of size m; under i.i.d. labels and a
    symmetric algorithm this matches any fixed partition.  Only label-count
    determined algorithms (constant / majority) are supported.
    """
    n, k, m = s.n, s.k, s.m
    if n > config.BRUTE_FORCE_CAP:
        raise ValueError(f"bitstring oracle capped at n <= {config.BRUTE_FORCE_CAP}")
    if algorithm.kind not in ("constant", "majority"):
        raise ValueError("bitstring oracle supports constant and majority only")

    vecs = np.arange(2**n, dtype=np.uint32)
    pop = np.array([bin(v).count("1") for v in range(2**m)], dtype=np.int16)
    mask = (1 << m) - 1
    x = np.stack([pop[(vecs >> (i * m)) & mask] for i in range(k)])  # (k, 2^n)
    y_total = x.sum(axis=0, dtype=np.int16)

    if algorithm.kind == "constant":
        bits = np.full(x.shape, bool(algorithm.bit), dtype=bool)
    else:
        comp = y_total[None, :] - x
        bits = _trained_bits(comp, n - m, algorithm.tie_policy)
    # t_i = m * (fold-i hold-out loss); integer in [0, m]
    t = np.where(bits, m - x, x).astype(np.int16)
    T = t.sum(axis=0, dtype=np.int32)  # n * L_cv

    size = 2**n
    # Population risk of any constant hypothesis under uniform labels is 1/2.
    s_dev2 = int(((2 * T.astype(np.int64) - n) ** 2).sum())
    mse = Fraction(s_dev2, 4 * n * n * size)

    e_t1 = Fraction(int(t[0].sum(dtype=np.int64)), size)
    e_t2 = Fraction(int(t[1].sum(dtype=np.int64)), size)
    e_t1t2 = Fraction(int((t[0].astype(np.int64) * t[1]).sum()), size)
    e_t1sq = Fraction(int((t[0].astype(np.int64) * t[0]).sum()), size)
    fold_cov = (e_t1t2 - e_t1 * e_t2) / (m * m)
    fold_var = (e_t1sq - e_t1 * e_t1) / (m * m)
    est_mean = Fraction(int(T.sum(dtype=np.int64)), n * size)
    return OracleResult(mse, fold_cov, fold_var, est_mean)


def count_cv_oracle(s: FoldScheme, tie_policy: TiePolicy = TiePolicy.TO_ZERO) -> OracleResult:
    """Exact Majority CV moments via the sufficiency of fold label counts.

    The fold covariance comes from a triple sum over (x1, x2, y) with
    product-binomial weights; the MSE uses the exchangeability decomposition
    with fold variance 1/(4m).
    """
    n, k, m = s.n, s.k, s.m
    N = n - 2 * m
    if m > config.COUNT_ORACLE_M_CAP:
        raise ValueError(f"count oracle capped at m <= {config.COUNT_ORACLE_M_CAP}")
    wm = [binomial(m, x) for x in range(m + 1)]
    wN = [binomial(N, y) for y in range(N + 1)]
    thresh = n - m  # training-set size for each fold
    s_t1t2 = 0
    s_t1 = 0
    for y in range(N + 1):
        for x1 in range(m + 1):
            w1 = wm[x1] * wN[y]
            for x2 in range(m + 1):
                c1 = x2 + y  # complement count relative to fold 1
                c2 = x1 + y
                if tie_policy is TiePolicy.TO_ZERO:
                    b1 = 2 * c1 > thresh
                    b2 = 2 * c2 > thresh
                else:
                    b1 = 2 * c1 >= thresh
                    b2 = 2 * c2 >= thresh
                t1 = m - x1 if b1 else x1
                t2 = m - x2 if b2 else x2
                w = w1 * wm[x2]
                s_t1t2 += w * t1 * t2
                s_t1 += w * t1
        # s_t1 accumulates over x2 as well (weights sum to 2^m per x2 loop)
    size = 2**n
    e_t1 = Fraction(s_t1, size)
    e_t1t2 = Fraction(s_t1t2, size)
    fold_cov = (e_t1t2 - e_t1 * e_t1) / (m * m)
    fold_var = Fraction(1, 4 * m)
    mse = Fraction(1, k) * fold_var + Fraction(k - 1, k) * fold_cov
    est_mean = e_t1 / m
    return OracleResult(mse, fold_cov, fold_var, est_mean)


def factorization_check(s: FoldScheme) -> tuple[Fraction, Fraction]:
    """Direct fold covariance vs. the factorized form
    4 E_Y[ Cov(X/m, 1{X > theta - Y} | Y)^2 ] with theta = (n-m)/2.

    Both are exact rationals and must coincide.
    """
    n, m = s.n, s.m
    N = n - 2 * m
    direct = count_cv_oracle(s).fold_covariance
    wm = [binomial(m, x) for x in range(m + 1)]
    factored = Fraction(0)
    for y in range(N + 1):
        # X > theta - y  <=>  2(X + y) > n - m
        e_num = sum(x * wm[x] for x in range(m + 1) if 2 * (x + y) > n - m)
        p_num = sum(wm[x] for x in range(m + 1) if 2 * (x + y) > n - m)
        cov_y = Fraction(e_num, m * 2**m) - Fraction(1, 2) * Fraction(p_num, 2**m)
        factored += Fraction(binomial(N, y), 2**N) * cov_y**2
    return direct, 4 * factored


def empirical_error_mse(n: int) -> Fraction:
    """MSE of the empirical error of Majority under uniform labels,
    E[(Y/n - 1/2)^2] over Y ~ Bin(n, 1/2); equals 1/(4n)."""
    if n < 1:
        raise ValueError("n must be positive")
    total = 0
    c = 1
    for y in range(n + 1):
        total += c * (2 * y - n) ** 2
        c = c * (n - y) // (y + 1)
    return Fraction(total, 4 * n * n * 2**n)


def holdout_mse(n: int) -> Fraction:
    """MSE of an independent size-n validation set for a risk-1/2 classifier;
    same direct summation as the empirical error, equal to 1/(4n)."""
    return empirical_error_mse(n)
