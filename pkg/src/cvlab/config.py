"""Tunable caps and calibration constants.

Values in FITTED_* were measured once on the calibration grids described in
the verification suite and then frozen; they are empirical envelopes, not
derived constants.
"""

import os

# Largest n for which exact rational covariance evaluation is permitted.
# Beyond this, 2^n denominators make rationals impractical; use log-space.
EXACT_N_CAP = 4096

# Largest r for which log-binomials are taken as log(comb(r, t)) of the exact
# integer (error ~1 ulp of the result).  Above this, log-gamma is used.
LOG_EXACT_CAP = 8192

# Largest n accepted by the exhaustive 2^n bitstring oracle.
BRUTE_FORCE_CAP = 20

# Largest fold size accepted by the count-based oracle.
COUNT_ORACLE_M_CAP = 512

# Theta-series truncation; the t=1 term already underflows for fold sizes
# of a couple dozen, so 16 is generous.
THETA_T_MAX = 16

# Direct lattice sums are truncated at this many standard deviations around
# the Gaussian center (tail mass < 1e-30 of the total).
LATTICE_WINDOW_SIGMAS = 12.0

# Below this n, covariance monotonicity in m is reported, not asserted
# (the statement holds for all sufficiently large n only).
MONOTONICITY_N_THRESHOLD = 60

# Empirical constant for the local-limit-theorem envelope
# sup_t |p_r(t) - g_r(t)| <= C0 r^{-3/2}, fitted on r in [2, 50].
FITTED_LLT_C0 = 0.20

# Error-budget constant for the large-m covariance approximation,
# |Cov - leading| <= c / (sqrt(n) m^{3/2}), fitted on a calibration grid.
FITTED_LARGE_M_C = 0.12

# Bracket for exact_hypothesis_stability(n, m) * sqrt(n/m), measured over
# n in {100, 400, 1600}, m in {n/100, n/10, n/2}.
STABILITY_BRACKET = (0.25, 0.45)


def worker_cap() -> int:
    """Worker-count cap from CVLAB_THREADS (currently informational: all
    computations run single-threaded and are deterministic)."""
    try:
        return max(1, int(os.environ.get("CVLAB_THREADS", "1")))
    except ValueError:
        return 1
