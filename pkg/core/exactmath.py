"""
Exact Math - Integer and rational primitives shared by every engine module
No floating point anywhere: every bound is decided by integer comparison
"""

import math
from fractions import Fraction
from typing import List, Optional, Tuple

from sympy import divisors as _sympy_divisors
from sympy import factorint, multiplicity

from .errors import InvalidInputError

# Ratio is a normalized exact rational (den > 0, gcd(|num|, den) = 1)
Ratio = Fraction


def _require_nat(name: str, n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise InvalidInputError(f"{name} must be a non-negative integer, got {n!r}")


def binom(n: int, r: int) -> int:
    """C(n, r); 0 when r > n"""
    _require_nat("n", n)
    _require_nat("r", r)
    return math.comb(n, r)


def falling(n: int, m: int) -> int:
    """n(n-1)...(n-m+1); 1 when m = 0"""
    _require_nat("n", n)
    _require_nat("m", m)
    if m > n + 1:
        raise InvalidInputError(f"falling({n}, {m}) needs m <= n + 1")
    return math.perm(n, m)


def divisors(n: int) -> List[int]:
    """All positive divisors of n, increasing"""
    _require_nat("n", n)
    if n == 0:
        raise InvalidInputError("divisors(0) is undefined")
    return [int(d) for d in _sympy_divisors(n)]


def prime_power(n: int) -> Optional[Tuple[int, int]]:
    """(p, e) with p prime and p**e == n, or None"""
    _require_nat("n", n)
    if n < 2:
        raise InvalidInputError(f"prime_power needs n >= 2, got {n}")
    factors = factorint(n)
    if len(factors) != 1:
        return None
    (p, e), = factors.items()
    return int(p), int(e)


def val2(n: int) -> int:
    """2-adic valuation of n >= 1"""
    _require_nat("n", n)
    if n == 0:
        raise InvalidInputError("val2(0) is undefined")
    return int(multiplicity(2, n))


def isqrt(n: int) -> int:
    """Largest s with s*s <= n"""
    _require_nat("n", n)
    return math.isqrt(n)


def floor_sqrt_plus_half(v: int, whole: int) -> int:
    """
    floor(sqrt(v) + whole + 1/2) by integer arithmetic.

    With s = isqrt(v), the fractional part of sqrt(v) reaches 1/2 exactly
    when 4v >= (2s+1)^2.
    """
    s = isqrt(v)
    if 4 * v < (2 * s + 1) ** 2:
        return s + whole
    return s + whole + 1


def ratio(num: int, den: int) -> Ratio:
    """Normalized exact rational num/den"""
    if den == 0:
        raise InvalidInputError("zero denominator")
    return Fraction(num, den)


def format_ratio(num: int, den: int) -> str:
    """Unreduced 'num/den', or just 'num' when den is 1"""
    return str(num) if den == 1 else f"{num}/{den}"
