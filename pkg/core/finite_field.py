"""
Finite Fields - GF(p^e) by log/antilog tables for desk-scale generator sets
Elements are the integers 0..q-1 read as base-p coefficient vectors
(c_0 + c_1 p + ...), so 0 and 1 are the field's zero and one.
"""

from functools import lru_cache
from typing import Dict, List, Tuple

from .errors import InvalidInputError
from .exactmath import prime_power

# Lower coefficients (f_0, ..., f_{e-1}) of the monic modulus x^e + ... + f_0
FIXED_MODULI: Dict[int, Tuple[int, ...]] = {
    8: (1, 1, 0),          # x^3 + x + 1
    32: (1, 0, 1, 0, 0),   # x^5 + x^2 + 1
}

MAX_FIELD_SIZE = 128


def _digits(n: int, p: int, e: int) -> List[int]:
    out = []
    for _ in range(e):
        n, c = divmod(n, p)
        out.append(c)
    return out


def _number(digits: List[int], p: int) -> int:
    n = 0
    for c in reversed(digits):
        n = n * p + c
    return n


def _times_x(elem: int, modulus: Tuple[int, ...], p: int, e: int) -> int:
    digits = _digits(elem, p, e)
    top = digits[-1]
    shifted = [0] + digits[:-1]
    # x^e = -(f_0 + f_1 x + ... + f_{e-1} x^{e-1})
    return _number([(c - top * f) % p for c, f in zip(shifted, modulus)], p)


def _powers_of_x(modulus: Tuple[int, ...], p: int, e: int) -> List[int]:
    """x^0, x^1, ... until the cycle closes"""
    q = p ** e
    powers = [1]
    elem = _times_x(1, modulus, p, e)
    while elem != 1 and elem != 0 and len(powers) < q:
        powers.append(elem)
        elem = _times_x(elem, modulus, p, e)
    return powers


def _first_primitive(p: int, e: int) -> Tuple[int, ...]:
    """First modulus (lexicographic in f_0, f_1, ...) for which x has order p^e - 1"""
    q = p ** e
    for n in range(q):
        modulus = tuple(_digits(n, p, e))
        if modulus[0] == 0:
            continue
        if len(_powers_of_x(modulus, p, e)) == q - 1:
            return modulus
    raise RuntimeError(f"no primitive modulus found for GF({q})")


class GaloisField:
    """GF(q) for prime powers q <= 128"""

    def __init__(self, q: int):
        pp = prime_power(q) if isinstance(q, int) and q >= 2 else None
        if pp is None:
            raise InvalidInputError(f"GF(q) needs a prime power q, got {q!r}")
        if q > MAX_FIELD_SIZE:
            raise InvalidInputError(f"GF(q) is supported for q <= {MAX_FIELD_SIZE}, got {q}")
        self.q = q
        self.p, self.e = pp
        self.modulus = FIXED_MODULI.get(q) or _first_primitive(self.p, self.e)
        self.exp = _powers_of_x(self.modulus, self.p, self.e)
        if len(self.exp) != q - 1:
            raise RuntimeError(f"modulus {self.modulus} is not primitive for GF({q})")
        self.log = {elem: i for i, elem in enumerate(self.exp)}

    @property
    def primitive(self) -> int:
        return self.exp[1 % (self.q - 1)]

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        da, db = _digits(a, self.p, self.e), _digits(b, self.p, self.e)
        return _number([(x + y) % self.p for x, y in zip(da, db)], self.p)

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        return _number([(-x) % self.p for x in _digits(a, self.p, self.e)], self.p)

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.exp[(-self.log[a]) % (self.q - 1)]

    def power(self, a: int, n: int) -> int:
        if a == 0:
            return 0 if n > 0 else 1
        return self.exp[(self.log[a] * n) % (self.q - 1)]

    def frobenius(self, a: int) -> int:
        return self.power(a, self.p)


@lru_cache(maxsize=None)
def field(q: int) -> GaloisField:
    return GaloisField(q)
