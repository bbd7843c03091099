"""Gaussian approximations, lattice sums, and the theta-function correction."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cvlab.asymptotics import (
    LatticeSumMode,
    ThetaParams,
    covariance_report,
    gaussian_proxy,
    large_m_approx,
    leading_term,
    llt_sup_error,
    poisson_summation_check,
    sublinear_approx,
    theta_correction,
    triple_gaussian_lattice_sum,
)
from cvlab.exact import CovarianceQuery, PrecisionMode, exact_fold_covariance


class TestGaussianProxy:
    def test_peak_value(self):
        r = 100
        assert gaussian_proxy(r, r / 2) == pytest.approx(math.sqrt(2 / (math.pi * r)))

    def test_symmetry_about_half_r(self):
        r = 31
        for d in (0.5, 3.0, 7.25):
            assert gaussian_proxy(r, r / 2 + d) == pytest.approx(gaussian_proxy(r, r / 2 - d))

    @given(st.integers(2, 3000))
    @settings(max_examples=100)
    def test_llt_error_decays_like_r_to_minus_three_halves(self, r):
        assert llt_sup_error(r) <= 0.20 * r**-1.5


class TestLeadingTerm:
    def test_formula(self):
        n, m = 300, 30
        assert leading_term(n, m) == pytest.approx(
            1.0 / (2 * math.pi * math.sqrt((m - 1) * (2 * n - 3 * m)))
        )

    def test_rejects_m1(self):
        with pytest.raises(ValueError):
            leading_term(100, 1)

    @pytest.mark.parametrize(
        "n,m", [(3000, 100), (10000, 200), (10000, 1000), (100000, 2000)]
    )
    def test_relative_error_small_in_regime(self, n, m):
        exact = exact_fold_covariance(CovarianceQuery(n, m, PrecisionMode.LOG_SPACE_FLOAT))
        assert abs(leading_term(n, m) / exact - 1) < 0.05

    @pytest.mark.parametrize("n,m", [(3000, 100), (10000, 1000)])
    def test_sublinear_refinement_beats_leading(self, n, m):
        exact = exact_fold_covariance(CovarianceQuery(n, m, PrecisionMode.LOG_SPACE_FLOAT))
        err_lead = abs(leading_term(n, m) / exact - 1)
        err_sub = abs(sublinear_approx(n, m) / exact - 1)
        assert err_sub < err_lead


class TestThetaParams:
    @given(st.integers(10, 100000), st.integers(2, 1000))
    @settings(max_examples=200)
    def test_gamma_is_alpha_plus_beta(self, n, m):
        if 3 * m > n:
            return
        p = ThetaParams.from_sizes(n, m)
        assert p.gamma == pytest.approx(p.alpha + p.beta)
        assert p.epsilon in (0.0, 0.5)
        assert p.epsilon == ((n - m) / 2 - (n - m) // 2)


class TestLatticeSums:
    @pytest.mark.parametrize(
        "n,m",
        [(20, 5), (21, 7), (50, 10), (99, 33), (300, 75), (1001, 143), (5000, 1000)],
    )
    def test_direct_equals_theta_form(self, n, m):
        d = triple_gaussian_lattice_sum(n, m, LatticeSumMode.DIRECT)
        t = triple_gaussian_lattice_sum(n, m, LatticeSumMode.THETA_FORM)
        assert d == pytest.approx(t, rel=1e-12)

    def test_theta_correction_near_one_for_small_gamma(self):
        # gamma small => theta terms exp(-pi^2 t^2 / gamma) are negligible
        p = ThetaParams.from_sizes(10000, 100)
        assert theta_correction(p) == pytest.approx(1.0, abs=1e-12)

    @given(st.floats(0.5, 60.0), st.floats(0.0, 1.0))
    @settings(max_examples=150)
    def test_poisson_summation_identity(self, gamma, mu):
        lhs, rhs = poisson_summation_check(gamma, mu)
        assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-280)


class TestReports:
    def test_covariance_report_consistency(self):
        rep = covariance_report(2000, 200)
        assert rep.rel_err_leading < 0.01
        assert rep.rel_err_sublinear < rep.rel_err_leading
        assert rep.theta_corrected == pytest.approx(rep.exact, rel=0.01)

    def test_large_m_error_budget_covers_truth(self):
        for n, m in ((1200, 400), (3000, 1000), (2000, 500)):
            exact = exact_fold_covariance(CovarianceQuery(n, m, PrecisionMode.LOG_SPACE_FLOAT))
            approx = large_m_approx(n, m)
            assert abs(exact - approx.leading) <= approx.error_budget
