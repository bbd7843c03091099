"""Monte Carlo simulator: determinism, calibration, stability measures."""

from fractions import Fraction

import pytest

from cvlab.exact import FoldScheme, exact_cv_mse
from cvlab.sim import (
    AlgorithmSpec,
    DataSpec,
    TiePolicy,
    estimate_loss_stability,
    exact_hypothesis_stability,
    exact_loss_stability_majority,
    loss_stability_anticorr,
    run_cv_mse,
)


def test_determinism_bit_for_bit():
    a = run_cv_mse(DataSpec("point_mass", 12), AlgorithmSpec.majority(), k=3, trials=5000, seed=123)
    b = run_cv_mse(DataSpec("point_mass", 12), AlgorithmSpec.majority(), k=3, trials=5000, seed=123)
    assert a == b


def test_different_seeds_differ():
    a = run_cv_mse(DataSpec("point_mass", 12), AlgorithmSpec.majority(), k=3, trials=5000, seed=1)
    b = run_cv_mse(DataSpec("point_mass", 12), AlgorithmSpec.majority(), k=3, trials=5000, seed=2)
    assert a.mean != b.mean


@pytest.mark.parametrize("n,k", [(6, 2), (12, 3), (12, 6), (20, 4)])
def test_majority_matches_exact_within_3se(n, k):
    target = float(exact_cv_mse(FoldScheme(n, k)))
    est = run_cv_mse(DataSpec("point_mass", n), AlgorithmSpec.majority(), k=k, trials=40000, seed=7)
    assert abs(est.mean - target) <= 3 * est.std_error


def test_constant_algorithm_matches_quarter_over_n():
    est = run_cv_mse(DataSpec("point_mass", 20, q=0.5), AlgorithmSpec.constant(0), k=4, trials=50000, seed=11)
    assert abs(est.mean - 0.25 / 20) <= 3 * est.std_error


def test_anticorr_cv_mse_identically_zero():
    for n in (4, 8, 16):
        est = run_cv_mse(
            DataSpec("uniform_threshold", n), AlgorithmSpec.anticorr_interval(), k=2, trials=2000, seed=3
        )
        assert est.mean == 0.0
        assert est.std_error == 0.0


class TestHypothesisStability:
    def test_frozen_value_n2_m1(self):
        assert exact_hypothesis_stability(2, 1) == Fraction(1, 4)

    def test_decreases_in_n_for_fixed_m(self):
        # beta ~ c sqrt(m/n): removing a fixed block matters less as n grows
        vals = [exact_hypothesis_stability(n, 4) for n in (16, 64, 256, 1024)]
        assert all(a > b for a, b in zip(vals, vals[1:]))

    def test_constant_limit_at_half_ratio(self):
        # at m = n/2 the flip probability approaches 1/4 from below
        vals = [exact_hypothesis_stability(n, n // 2) for n in (8, 32, 128, 512)]
        assert all(a < b for a, b in zip(vals, vals[1:]))
        assert all(v < Fraction(1, 4) for v in vals)

    def test_sqrt_law_normalization_stable(self):
        import math

        lo = hi = None
        for n in (64, 256, 1024):
            v = float(exact_hypothesis_stability(n, n // 4)) * math.sqrt(n / (n // 4))
            lo = v if lo is None else min(lo, v)
            hi = v if hi is None else max(hi, v)
        assert hi / lo < 1.2


class TestLossStability:
    def test_anticorr_closed_form(self):
        assert loss_stability_anticorr(2) == (Fraction(1, 4), Fraction(0))
        assert loss_stability_anticorr(4) == (Fraction(3, 16), Fraction(0))

    def test_majority_balanced_labels_zero(self):
        # at q = 1/2 both hypotheses have risk 1/2: loss stability vanishes
        assert exact_loss_stability_majority(8, 2, Fraction(1, 2)) == 0

    def test_majority_estimate_matches_exact(self):
        q = Fraction(2, 5)
        exact = float(exact_loss_stability_majority(10, 2, q))
        est = estimate_loss_stability(
            DataSpec("point_mass", 10, q=0.4), AlgorithmSpec.majority(), n=10, m=2, trials=200000, seed=19
        )
        assert abs(est.mean - exact) <= 3 * est.std_error

    def test_tie_policy_changes_flip_probability(self):
        a = exact_hypothesis_stability(6, 2, TiePolicy.TO_ZERO)
        b = exact_hypothesis_stability(6, 2, TiePolicy.TO_ONE)
        assert a == b  # symmetric under label swap at q = 1/2
