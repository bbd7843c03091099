"""Brute-force oracles: mutual agreement and agreement with closed forms."""

from fractions import Fraction

import pytest

from cvlab.exact import CovarianceQuery, FoldScheme, exact_cv_mse, exact_fold_covariance
from cvlab.oracle import (
    bitstring_cv_oracle,
    count_cv_oracle,
    empirical_error_mse,
    factorization_check,
    holdout_mse,
)
from cvlab.sim import AlgorithmSpec, TiePolicy


def schemes(n_max):
    out = []
    for n in range(2, n_max + 1):
        for k in range(2, n + 1):
            if n % k == 0:
                out.append(FoldScheme(n, k))
    return out


@pytest.mark.parametrize("s", schemes(14), ids=lambda s: f"n{s.n}k{s.k}")
def test_bitstring_equals_count(s):
    b = bitstring_cv_oracle(s, AlgorithmSpec.majority())
    c = count_cv_oracle(s)
    assert b.mse == c.mse
    assert b.fold_covariance == c.fold_covariance
    assert b.fold_variance == c.fold_variance == Fraction(1, 4 * s.m)
    assert b.estimator_mean == c.estimator_mean == Fraction(1, 2)


@pytest.mark.parametrize("s", schemes(12), ids=lambda s: f"n{s.n}k{s.k}")
def test_oracles_match_closed_forms(s):
    b = bitstring_cv_oracle(s, AlgorithmSpec.majority())
    assert b.fold_covariance == exact_fold_covariance(CovarianceQuery(s.n, s.m))
    assert b.mse == exact_cv_mse(s)


@pytest.mark.parametrize("s", schemes(12), ids=lambda s: f"n{s.n}k{s.k}")
def test_factorization_identity(s):
    direct, factored = factorization_check(s)
    assert direct == factored
    assert direct == exact_fold_covariance(CovarianceQuery(s.n, s.m))


def test_tie_policy_symmetry():
    # with ties sent the other way, the distribution is mirrored: same MSE
    for s in (FoldScheme(4, 2), FoldScheme(8, 4), FoldScheme(12, 6)):
        z = bitstring_cv_oracle(s, AlgorithmSpec.majority(TiePolicy.TO_ZERO))
        o = bitstring_cv_oracle(s, AlgorithmSpec.majority(TiePolicy.TO_ONE))
        assert z.mse == o.mse
        assert z.fold_covariance == o.fold_covariance


def test_constant_algorithm_cv_matches_binomial_mean_deviation():
    # constant h0 predicts 0 everywhere; CV estimate is the fraction of ones,
    # risk is 1/2, so MSE = Var(Y/n) = 1/(4n)
    for s in (FoldScheme(6, 2), FoldScheme(10, 5)):
        res = bitstring_cv_oracle(s, AlgorithmSpec.constant(0))
        assert res.mse == Fraction(1, 4 * s.n)


def test_holdout_and_empirical_error():
    # both reduce to Var(Y/n) = 1/(4n) for a risk-1/2 classifier
    for n in (1, 4, 10, 37, 128):
        assert empirical_error_mse(n) == Fraction(1, 4 * n)
        assert holdout_mse(n) == Fraction(1, 4 * n)
