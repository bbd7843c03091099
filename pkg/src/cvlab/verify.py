"""Acceptance suites: every headline claim checked at a pinned tolerance.

Each criterion returns a CriterionResult; suites group them as
exact / asymptotic / simulate.  Tolerances are fixed here, not configurable.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import config
from .analysis import argmin_cov, argmin_mse, divisors, gap_ratio, minimax_table, monotonicity_check
from .asymptotics import (
    LatticeSumMode,
    leading_term,
    llt_sup_error,
    triple_gaussian_lattice_sum,
)
from .exact import (
    CovarianceQuery,
    FoldScheme,
    PrecisionMode,
    conditional_cov_identity,
    endpoint_cov_half,
    endpoint_cov_m1,
    exact_cv_mse,
    exact_fold_covariance,
)
from .oracle import bitstring_cv_oracle, count_cv_oracle, factorization_check
from .sim import (
    AlgorithmSpec,
    DataSpec,
    exact_hypothesis_stability,
    loss_stability_anticorr,
    run_cv_mse,
)

__all__ = ["CriterionResult", "SUITES", "run_suite", "format_report"]


@dataclass(frozen=True)
class CriterionResult:
    name: str
    passed: bool
    detail: str
    seconds: float


def _result(name: str, passed: bool, detail: str, t0: float) -> CriterionResult:
    return CriterionResult(name, passed, detail, time.time() - t0)


def _fold_schemes(n_max: int):
    for n in range(2, n_max + 1):
        for k in divisors(n):
            if k >= 2:
                yield FoldScheme(n, k)


def exact_vs_bitstring() -> CriterionResult:
    """1: exact closed forms equal the 2^n bitstring oracle for n <= 16."""
    t0 = time.time()
    maj = AlgorithmSpec.majority()
    for s in _fold_schemes(16):
        res = bitstring_cv_oracle(s, maj)
        cov = exact_fold_covariance(CovarianceQuery(s.n, s.m))
        mse = exact_cv_mse(s)
        if res.fold_covariance != cov or res.mse != mse:
            return _result(
                "exact-vs-bitstring",
                False,
                f"mismatch at n={s.n}, k={s.k}",
                t0,
            )
    return _result("exact-vs-bitstring", True, "all n<=16, k|n: exact equality", t0)


def oracle_cross_agreement() -> CriterionResult:
    """2: bitstring vs count oracle for n <= 20, plus factorization identity."""
    t0 = time.time()
    maj = AlgorithmSpec.majority()
    for s in _fold_schemes(20):
        b = bitstring_cv_oracle(s, maj)
        c = count_cv_oracle(s)
        if b.fold_covariance != c.fold_covariance or b.mse != c.mse:
            return _result("oracle-cross-agreement", False, f"oracle mismatch at n={s.n}, k={s.k}", t0)
        direct, factored = factorization_check(s)
        if direct != factored:
            return _result("oracle-cross-agreement", False, f"factorization mismatch at n={s.n}, k={s.k}", t0)
    return _result("oracle-cross-agreement", True, "bitstring = count = factorized, n<=20", t0)


def endpoint_identities() -> CriterionResult:
    """3: m=1 and m=n/2 endpoint formulas equal the general sum."""
    t0 = time.time()
    for n in range(2, 1001):
        if endpoint_cov_m1(n) != exact_fold_covariance(CovarianceQuery(n, 1)):
            return _result("endpoint-identities", False, f"m=1 mismatch at n={n}", t0)
        if n % 2 == 0:
            if endpoint_cov_half(n) != exact_fold_covariance(CovarianceQuery(n, n // 2)):
                return _result("endpoint-identities", False, f"m=n/2 mismatch at n={n}", t0)
    # log-space spot checks up to the rational cap
    for n in (2048, 4096):
        lg = exact_fold_covariance(CovarianceQuery(n, n // 2, PrecisionMode.LOG_SPACE_FLOAT))
        if abs(lg / float(endpoint_cov_half(n)) - 1) > 1e-10:
            return _result("endpoint-identities", False, f"log-space mismatch at n={n}", t0)
    return _result("endpoint-identities", True, "n<=1000 exact; log-space to 1e-10 at 2048/4096", t0)


def conditional_identity() -> CriterionResult:
    """4: Cov(X_m, 1{X_m >= a+1}) = (m/4) P(X_{m-1} = a) exactly."""
    t0 = time.time()
    for m in range(1, 65):
        for a in range(-2, m + 3):
            lhs, rhs = conditional_cov_identity(m, a)
            if lhs != rhs:
                return _result("conditional-covariance", False, f"mismatch at m={m}, a={a}", t0)
    return _result("conditional-covariance", True, "m<=64, a in [-2, m+2]: exact", t0)


def asymptotic_regime() -> CriterionResult:
    """5: |exact/leading - 1| <= 0.05 on the large-n divisor grid."""
    t0 = time.time()
    worst = 0.0
    where = None
    for n in (10**4, 10**5, 10**6):
        ms = [m for m in divisors(n) if 50 <= m <= n // 3]
        step = max(1, len(ms) // 7)
        for m in ms[::step]:
            cov = exact_fold_covariance(CovarianceQuery(n, m, PrecisionMode.LOG_SPACE_FLOAT))
            rel = abs(cov / leading_term(n, m) - 1.0)
            if rel > worst:
                worst, where = rel, (n, m)
    passed = worst <= 0.05
    return _result("asymptotic-regime", passed, f"worst rel err {worst:.2e} at {where}", t0)


def endpoint_asymptotic() -> CriterionResult:
    """6: |Cov(n, n/2) pi (n-2) - 1| <= 3/n for even n in [100, 5000]."""
    t0 = time.time()
    worst = 0.0
    where = None
    for n in range(100, 5001, 2):
        if n <= config.EXACT_N_CAP:
            cov = float(endpoint_cov_half(n))
        else:
            cov = exact_fold_covariance(CovarianceQuery(n, n // 2, PrecisionMode.LOG_SPACE_FLOAT))
        ratio = abs(cov * math.pi * (n - 2) - 1.0) * n / 3.0
        if ratio > worst:
            worst, where = ratio, n
    passed = worst <= 1.0
    return _result("endpoint-asymptotic", passed, f"worst |dev|/(3/n) = {worst:.6f} at n={where}", t0)


def poisson_summation() -> CriterionResult:
    """7: direct vs theta-form lattice sums agree to 1e-12 on 50 pairs."""
    t0 = time.time()
    pairs = []
    for n in (20, 30, 50, 75, 120, 300, 643, 1000, 2048, 5000):
        for frac in (8, 6, 5, 4, 3):
            m = max(2, n // frac)
            if n - 2 * m >= 1:
                pairs.append((n, m))
    pairs = pairs[:50]
    worst = 0.0
    where = None
    for n, m in pairs:
        d = triple_gaussian_lattice_sum(n, m, LatticeSumMode.DIRECT)
        th = triple_gaussian_lattice_sum(n, m, LatticeSumMode.THETA_FORM)
        rel = abs(d / th - 1.0)
        if rel > worst:
            worst, where = rel, (n, m)
    passed = worst <= 1e-12
    return _result("poisson-summation", passed, f"{len(pairs)} pairs, worst rel {worst:.2e} at {where}", t0)


def llt_envelope() -> CriterionResult:
    """8: llt_sup_error(r) r^{3/2} over r in [2, 5000] stays within 2x its
    value on r in [2, 50]."""
    t0 = time.time()
    small = max(llt_sup_error(r) * r**1.5 for r in range(2, 51))
    full = small
    for r in range(51, 5001):
        full = max(full, llt_sup_error(r) * r**1.5)
    passed = math.isfinite(full) and full <= 2.0 * small and full <= config.FITTED_LLT_C0
    return _result("llt-envelope", passed, f"envelope {full:.4f} vs small-r {small:.4f} (C0={config.FITTED_LLT_C0})", t0)


def minimizers() -> CriterionResult:
    """9: argmin_mse = {2}, argmin_cov = {3}, monotonicity, and the n=6 tie."""
    t0 = time.time()
    for n in (100, 500, 1000, 2000):
        ks, _ = argmin_mse(n)
        if ks != {2}:
            return _result("minimizers", False, f"argmin_mse({n}) = {ks}", t0)
    for n in (60, 300, 600, 1200):
        ks, _ = argmin_cov(n)
        if ks != {3}:
            return _result("minimizers", False, f"argmin_cov({n}) = {ks}", t0)
    for n in (120, 720, 2520):
        res = monotonicity_check(n)
        if not (res.holds and res.asserted):
            return _result("minimizers", False, f"monotonicity fails at n={n}: {res.first_violation}", t0)
    ks, val = argmin_mse(6)
    if ks != {2, 3} or val != Fraction(7, 96):
        return _result("minimizers", False, f"n=6 tie not reproduced: {ks}, {val}", t0)
    return _result("minimizers", True, "argmin_mse={2}, argmin_cov={3}, monotone, n=6 tie {2,3}", t0)


def gap_and_minimax() -> CriterionResult:
    """10: gap_ratio(1e4) near 1 + 2/pi; normalized minimax column near
    1/4 + 1/(2 pi)."""
    t0 = time.time()
    g = gap_ratio(10**4)
    target = 1.0 + 2.0 / math.pi
    if abs(g - target) > 0.01:
        return _result("gap-and-minimax", False, f"gap_ratio(1e4) = {g:.4f}", t0)
    norm_target = 0.25 + 1.0 / (2.0 * math.pi)
    for row in minimax_table([1000, 1200, 2000]):
        if abs(row.min_mse_n - norm_target) > 0.02:
            return _result("gap-and-minimax", False, f"min_mse*n = {row.min_mse_n:.4f} at n={row.n}", t0)
    return _result("gap-and-minimax", True, f"gap_ratio(1e4) = {g:.4f} ~ {target:.4f}", t0)


def anticorr_counterexample() -> CriterionResult:
    """11: loss stability 1/4 with identically-zero CV MSE."""
    t0 = time.time()
    beta, mse = loss_stability_anticorr(2)
    if beta != Fraction(1, 4) or mse != 0:
        return _result("anticorr-counterexample", False, f"n=2 gave ({beta}, {mse})", t0)
    for n in (4, 8, 12):
        est = run_cv_mse(
            DataSpec("uniform_threshold", n), AlgorithmSpec.anticorr_interval(), k=n // 2, trials=1000, seed=42
        )
        if est.mean != 0.0 or est.std_error != 0.0:
            return _result("anticorr-counterexample", False, f"nonzero simulated MSE at n={n}", t0)
    return _result("anticorr-counterexample", True, "beta=1/4, simulated CV MSE identically 0", t0)


def stability_law() -> CriterionResult:
    """12: hypothesis stability obeys the sqrt(m/n) law; constant-algorithm
    simulated MSE matches p(1-p)/n."""
    t0 = time.time()
    lo, hi = config.STABILITY_BRACKET
    for n in (100, 400, 1600):
        for m in (n // 100, n // 10, n // 2):
            v = float(exact_hypothesis_stability(n, m)) * math.sqrt(n / m)
            if not lo <= v <= hi:
                return _result("stability-law", False, f"normalized stability {v:.4f} at (n={n}, m={m})", t0)
    for n in (10, 100):
        est = run_cv_mse(DataSpec("point_mass", n, q=0.5), AlgorithmSpec.constant(0), k=2, trials=10**5, seed=97)
        target = 0.25 / n
        if abs(est.mean - target) > 3 * est.std_error:
            return _result("stability-law", False, f"constant MSE off at n={n}: {est.mean:.5g} vs {target:.5g}", t0)
    return _result("stability-law", True, f"normalized stability within [{lo}, {hi}]; constant baseline within 3 SE", t0)


def monte_carlo_calibration() -> CriterionResult:
    """13: of 100 reseeded runs against an exact target, >= 96 land within
    3 standard errors."""
    t0 = time.time()
    target = float(exact_cv_mse(FoldScheme(12, 3)))
    hits = 0
    for seed in range(100):
        est = run_cv_mse(DataSpec("point_mass", 12), AlgorithmSpec.majority(), k=3, trials=4000, seed=seed)
        if abs(est.mean - target) <= 3 * est.std_error:
            hits += 1
    passed = hits >= 96
    return _result("monte-carlo-calibration", passed, f"{hits}/100 runs within 3 SE", t0)


SUITES: dict[str, list[Callable[[], CriterionResult]]] = {
    "exact": [
        exact_vs_bitstring,
        oracle_cross_agreement,
        endpoint_identities,
        conditional_identity,
        minimizers,
        gap_and_minimax,
    ],
    "asymptotic": [
        asymptotic_regime,
        endpoint_asymptotic,
        poisson_summation,
        llt_envelope,
    ],
    "simulate": [
        anticorr_counterexample,
        stability_law,
        monte_carlo_calibration,
    ],
}


def run_suite(name: str) -> list[CriterionResult]:
    if name == "all":
        checks = [c for suite in SUITES.values() for c in suite]
    elif name in SUITES:
        checks = SUITES[name]
    else:
        raise ValueError(f"unknown suite {name!r}; choose from exact|asymptotic|simulate|all")
    return [check() for check in checks]


def format_report(results: list[CriterionResult]) -> str:
    lines = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"[{status}] {r.name:26s} {r.detail} ({r.seconds:.2f}s)")
    n_pass = sum(r.passed for r in results)
    lines.append(f"{n_pass}/{len(results)} criteria passed")
    return "\n".join(lines)
