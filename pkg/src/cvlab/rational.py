"""Exact rational plumbing.

Exact probabilities and covariances are carried as `fractions.Fraction`
(already stored in lowest terms with a positive denominator).  The wire
format is the decimal string "num/den", which round-trips losslessly.
"""

from fractions import Fraction


def format_rational(x: Fraction) -> str:
    """Serialize as "num/den" (always includes the denominator)."""
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    """Parse "num/den" (or a bare integer string)."""
    s = s.strip()
    if "/" in s:
        num, den = s.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(s))
