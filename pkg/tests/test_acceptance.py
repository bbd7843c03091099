"""Acceptance gate: every headline criterion at its pinned tolerance.

One line per criterion is printed as it runs:

    [PASS] exact-vs-bitstring  all n<=16, k|n: exact equality (0.09s)

Run `pytest tests/test_acceptance.py -s` to see the lines inline, or
`cvlab verify --suite all` for the same report outside pytest.
"""

import sys

import pytest

from cvlab.verify import SUITES

ALL_CRITERIA = [(suite, check) for suite, checks in SUITES.items() for check in checks]


@pytest.mark.parametrize(
    "suite,check", ALL_CRITERIA, ids=[f"{s}-{c.__name__}" for s, c in ALL_CRITERIA]
)
def test_criterion(suite, check):
    result = check()
    status = "PASS" if result.passed else "FAIL"
    print(
        f"[{status}] {result.name:26s} {result.detail} ({result.seconds:.2f}s)",
        file=sys.stderr,
    )
    assert result.passed, f"{result.name}: {result.detail}"
