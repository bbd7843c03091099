"""Seeded Monte Carlo harness and exact stability computations.

The RNG contract: every simulation draws from a numpy Philox (counter-based)
generator keyed by the user seed, in a single vectorized pass, so identical
(config, seed) pairs reproduce identical estimates bit-for-bit regardless of
scheduling.  Population risks are always closed-form, never test-sampled.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .exact import binomial

__all__ = [
    "TiePolicy",
    "AlgorithmSpec",
    "DataSpec",
    "SimEstimate",
    "RNG_FAMILY",
    "run_cv_mse",
    "exact_hypothesis_stability",
    "exact_loss_stability_majority",
    "loss_stability_anticorr",
    "estimate_loss_stability",
]

RNG_FAMILY = "numpy.random.Philox"


class TiePolicy(enum.Enum):
    TO_ZERO = "to_zero"
    TO_ONE = "to_one"


@dataclass(frozen=True)
class AlgorithmSpec:
    """Learning rule for the simulator.

    kind: "constant" (always outputs h_bit), "majority" (h0 iff label count
    <= half the sample, per tie_policy), or "anticorr_interval" (the
    anticorrelated interval construction; valid only with uniform-threshold
    data).
    """

    kind: str
    bit: int = 0
    tie_policy: TiePolicy = TiePolicy.TO_ZERO
    description: str = ""

    def __post_init__(self):
        if self.kind not in ("constant", "majority", "anticorr_interval"):
            raise ValueError(f"unknown algorithm kind: {self.kind!r}")
        if self.bit not in (0, 1):
            raise ValueError("bit must be 0 or 1")

    @classmethod
    def constant(cls, bit: int = 0) -> "AlgorithmSpec":
        return cls("constant", bit=bit, description=f"constant h{bit}")

    @classmethod
    def majority(cls, tie_policy: TiePolicy = TiePolicy.TO_ZERO) -> "AlgorithmSpec":
        return cls("majority", tie_policy=tie_policy, description="majority vote")

    @classmethod
    def anticorr_interval(cls) -> "AlgorithmSpec":
        return cls("anticorr_interval", description="anticorrelated interval")


@dataclass(frozen=True)
class DataSpec:
    """Data distribution for the simulator.

    kind "point_mass": a single feature point with label ~ Bernoulli(q);
    kind "uniform_threshold": features uniform on [0,1], label 1{x > 1/2}.
    """

    kind: str
    n: int
    q: float = 0.5

    def __post_init__(self):
        if self.kind not in ("point_mass", "uniform_threshold"):
            raise ValueError(f"unknown data kind: {self.kind!r}")
        if self.n < 1:
            raise ValueError("n must be positive")
        if not 0.0 <= self.q <= 1.0:
            raise ValueError("q must lie in [0, 1]")


@dataclass(frozen=True)
class SimEstimate:
    mean: float
    std_error: float
    trials: int
    seed: int


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=seed))


def _majority_bit(counts: np.ndarray, size: int, tie_policy: TiePolicy) -> np.ndarray:
    if tie_policy is TiePolicy.TO_ZERO:
        return 2 * counts > size
    return 2 * counts >= size


def _estimate(values: np.ndarray, trials: int, seed: int) -> SimEstimate:
    mean = float(values.mean())
    se = float(values.std(ddof=1) / math.sqrt(trials))
    return SimEstimate(mean, se, trials, seed)


def run_cv_mse(
    data: DataSpec,
    algo: AlgorithmSpec,
    k: int,
    trials: int,
    seed: int,
) -> SimEstimate:
    """Monte Carlo estimate of the k-fold CV MSE.

    Per trial: draw a sample, compute the CV estimate by training on each
    (k-1)-fold complement, and compare against the closed-form population
    risk of the full-sample hypothesis.
    """
    n = data.n
    if n % k != 0:
        raise ValueError(f"k must divide n (got n={n}, k={k})")
    if trials < 100:
        raise ValueError("need trials >= 100")
    if algo.kind == "anticorr_interval" and data.kind != "uniform_threshold":
        raise ValueError("anticorr_interval requires uniform_threshold data")
    m = n // k
    rng = _rng(seed)

    if data.kind == "point_mass":
        labels = rng.random((trials, n)) < data.q
    else:
        labels = rng.random((trials, n)) > 0.5  # y = 1{x > 1/2}, x uniform
    y_total = labels.sum(axis=1)

    if algo.kind == "anticorr_interval":
        # CV estimate and full-sample risk are both the sample label mean.
        values = np.zeros(trials)
        return _estimate(values, trials, seed)

    x = labels.reshape(trials, k, m).sum(axis=2)
    q = data.q if data.kind == "point_mass" else 0.5
    if algo.kind == "constant":
        bits = np.full((trials, k), bool(algo.bit))
        full_bit = np.full(trials, bool(algo.bit))
    else:
        comp = y_total[:, None] - x
        bits = _majority_bit(comp, n - m, algo.tie_policy)
        full_bit = _majority_bit(y_total, n, algo.tie_policy)
    fold_loss = np.where(bits, m - x, x) / m
    l_cv = fold_loss.mean(axis=1)
    risk = np.where(full_bit, 1.0 - q, q)
    values = (l_cv - risk) ** 2
    return _estimate(values, trials, seed)


def _maj_bit_int(count: int, size: int, tie_policy: TiePolicy) -> int:
    if 2 * count > size:
        return 1
    if 2 * count < size:
        return 0
    return 0 if tie_policy is TiePolicy.TO_ZERO else 1


def exact_hypothesis_stability(
    n: int, m: int, tie_policy: TiePolicy = TiePolicy.TO_ZERO
) -> Fraction:
    """P[Maj(S^{n-m}) != Maj(S^n)] under uniform labels, exactly.

    Double sum over Y' ~ Bin(n-m, 1/2) and X ~ Bin(m, 1/2); for each Y' the
    disagreeing X values form a half-line, so suffix sums of the binomial
    row suffice.
    """
    if not 1 <= m < n:
        raise ValueError("need 1 <= m < n")
    row_m = [binomial(m, x) for x in range(m + 1)]
    suffix = [0] * (m + 2)
    for x in range(m, -1, -1):
        suffix[x] = suffix[x + 1] + row_m[x]
    total = 0
    for yp in range(n - m + 1):
        b1 = _maj_bit_int(yp, n - m, tie_policy)
        # full-sample output is 1 iff 2(yp + x) > n (>= for ties-to-one)
        c = n - 2 * yp
        x0 = c // 2 + 1 if tie_policy is TiePolicy.TO_ZERO else (c + 1) // 2
        x0 = min(max(x0, 0), m + 1)
        ones = suffix[x0]
        disagree = (2**m - ones) if b1 == 1 else ones
        total += binomial(n - m, yp) * disagree
    return Fraction(total, 2**n)


def exact_loss_stability_majority(
    n: int, m: int, q: Fraction, tie_policy: TiePolicy = TiePolicy.TO_ZERO
) -> Fraction:
    """E|L(Maj(S^n)) - L(Maj(S^{n-m}))| for point-mass data with label
    probability q, by exact enumeration over (Y', X).

    The risk jump is |2q - 1| exactly when the two majorities disagree.
    """
    if not 1 <= m < n:
        raise ValueError("need 1 <= m < n")
    q = Fraction(q)
    flip = Fraction(0)
    for yp in range(n - m + 1):
        w1 = binomial(n - m, yp) * q**yp * (1 - q) ** (n - m - yp)
        b1 = _maj_bit_int(yp, n - m, tie_policy)
        for x in range(m + 1):
            b2 = _maj_bit_int(yp + x, n, tie_policy)
            if b1 != b2:
                flip += w1 * binomial(m, x) * q**x * (1 - q) ** (m - x)
    return abs(2 * q - 1) * flip


def loss_stability_anticorr(n: int) -> tuple[Fraction, Fraction]:
    """Loss stability and CV MSE of the anticorrelated-interval construction.

    The sub-sample hypothesis is the constant h0 with risk 1/2 while the
    full-sample risk is Y/n, so beta = E|Y/n - 1/2| over Y ~ Bin(n, 1/2);
    the CV MSE is identically 0.
    """
    if n < 2 or n % 2 != 0:
        raise ValueError("n must be an even integer >= 2")
    total = sum(binomial(n, y) * abs(2 * y - n) for y in range(n + 1))
    return Fraction(total, 2 * n * 2**n), Fraction(0)


def estimate_loss_stability(
    data: DataSpec,
    algo: AlgorithmSpec,
    n: int,
    m: int,
    trials: int,
    seed: int,
) -> SimEstimate:
    """Monte Carlo estimate of E|L(A(S^{n-m} o S^m)) - L(A(S^{n-m}))|,
    using closed-form population risks per hypothesis."""
    if not 1 <= m < n:
        raise ValueError("need 1 <= m < n")
    if trials < 100:
        raise ValueError("need trials >= 100")
    if algo.kind == "anticorr_interval" and data.kind != "uniform_threshold":
        raise ValueError("anticorr_interval requires uniform_threshold data")
    rng = _rng(seed)

    if algo.kind == "anticorr_interval":
        # Full-sample risk is the label mean p(S); the size-(n-m) hypothesis
        # is h0 with risk P(y=1) = 1/2.
        labels = rng.random((trials, n)) > 0.5
        values = np.abs(labels.mean(axis=1) - 0.5)
        return _estimate(values, trials, seed)

    q = data.q if data.kind == "point_mass" else 0.5
    yp = rng.binomial(n - m, q, trials)
    x = rng.binomial(m, q, trials)
    if algo.kind == "constant":
        values = np.zeros(trials)
        return _estimate(values, trials, seed)
    b1 = _majority_bit(yp, n - m, algo.tie_policy)
    b2 = _majority_bit(yp + x, n, algo.tie_policy)
    values = abs(2 * q - 1) * (b1 != b2).astype(float)
    return _estimate(values, trials, seed)
