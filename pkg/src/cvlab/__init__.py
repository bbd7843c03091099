"""Exact, asymptotic, and simulated risk of k-fold cross-validation for
majority vote under uniformly random labels."""

from .exact import (
    CovarianceQuery,
    FoldScheme,
    PrecisionMode,
    exact_cv_mse,
    exact_fold_covariance,
)
from .sim import AlgorithmSpec, DataSpec, SimEstimate, TiePolicy, run_cv_mse

__all__ = [
    "CovarianceQuery",
    "FoldScheme",
    "PrecisionMode",
    "exact_cv_mse",
    "exact_fold_covariance",
    "AlgorithmSpec",
    "DataSpec",
    "SimEstimate",
    "TiePolicy",
    "run_cv_mse",
]
