import math
import random

import pytest
from sympy import factorint

from core.errors import InvalidInputError
from core.exactmath import (
    binom,
    divisors,
    falling,
    floor_sqrt_plus_half,
    format_ratio,
    isqrt,
    prime_power,
    ratio,
    val2,
)


def test_binom_values():
    assert binom(24, 5) == 42504
    assert binom(7, 7) == 1
    assert binom(6, 9) == 0
    assert binom(0, 0) == 1


def test_binom_pascal():
    for n in range(1, 65):
        for r in range(1, n + 1):
            assert binom(n, r) == binom(n - 1, r - 1) + binom(n - 1, r)


def test_binom_rejects_negative():
    with pytest.raises(InvalidInputError):
        binom(-1, 2)


def test_falling_values():
    assert falling(9, 7) == 181440
    assert falling(10, 7) == 604800
    assert falling(5, 0) == 1
    assert falling(3, 4) == 0


def test_falling_against_factorials():
    for n in range(21):
        for m in range(n + 1):
            assert falling(n, m) * math.factorial(n - m) == math.factorial(n)


def test_falling_rejects_long_products():
    with pytest.raises(InvalidInputError):
        falling(3, 5)


def test_divisors():
    assert divisors(1) == [1]
    assert divisors(5) == [1, 5]
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    with pytest.raises(InvalidInputError):
        divisors(0)


def test_divisor_count_matches_factorization():
    rng = random.Random(7)
    for _ in range(50):
        n = rng.randrange(1, 10**6)
        expected = math.prod(e + 1 for e in factorint(n).values())
        assert len(divisors(n)) == expected


def test_prime_power():
    assert prime_power(32) == (2, 5)
    assert prime_power(27) == (3, 3)
    assert prime_power(31) == (31, 1)
    assert prime_power(12) is None
    with pytest.raises(InvalidInputError):
        prime_power(1)


def test_val2():
    assert val2(1) == 0
    assert val2(40320) == 7
    assert val2(657720) == 3
    with pytest.raises(InvalidInputError):
        val2(0)


def test_isqrt():
    assert isqrt(16) == 4
    assert isqrt(33) == 5
    assert isqrt(10**12) == 10**6
    for n in range(2000):
        s = isqrt(n)
        assert s * s <= n < (s + 1) * (s + 1)


def test_floor_sqrt_plus_half():
    # sqrt(16) + 5.5 = 9.5, sqrt(20) + 5.5 = 9.97, sqrt(21) + 5.5 = 10.08
    assert floor_sqrt_plus_half(16, 5) == 9
    assert floor_sqrt_plus_half(20, 5) == 9
    assert floor_sqrt_plus_half(21, 5) == 10


def test_ratio_and_format():
    assert ratio(2002, 6) == ratio(1001, 3)
    assert format_ratio(2002, 6) == "2002/6"
    assert format_ratio(77, 1) == "77"
    with pytest.raises(InvalidInputError):
        ratio(1, 0)
