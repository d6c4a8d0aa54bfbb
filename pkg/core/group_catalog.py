"""
Group Catalog - The finite 3-homogeneous permutation groups as queryable data
Affine type (regular normal subgroup of order 2^d) and almost simple type
(N <= G <= Aut(N)), each entry with exact order formulas.

The published list this catalog follows is known to be slightly incomplete;
the omission has never been named, so no entries beyond the printed list are
added here.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from functools import reduce
from typing import Dict, List, Optional

from .errors import InvalidInputError
from .exactmath import divisors, prime_power

logger = logging.getLogger(__name__)


class Family(Enum):
    """Catalog families, in the order candidates are listed"""
    ALTERNATING = "Alternating"
    AGL1_8 = "AGL1_8"
    AGAMMAL1_8 = "AGammaL1_8"
    AGAMMAL1_32 = "AGammaL1_32"
    AFFINE_SL = "Affine_SL"
    AFFINE_A7 = "Affine_A7"
    PSL2 = "PSL2"
    MATHIEU = "Mathieu"
    M11_ON_12 = "M11_on_12"

    @classmethod
    def parse(cls, tag: str) -> "Family":
        for family in cls:
            if family.value.lower() == tag.lower() or family.name.lower() == tag.lower():
                return family
        raise InvalidInputError(f"unknown group family '{tag}'")


_FAMILY_RANK = {family: rank for rank, family in enumerate(Family)}

MATHIEU_DEGREES = (11, 12, 22, 23, 24)

# Full automorphism extension acting on the same points, and the simple socle
MATHIEU_ORDERS: Dict[int, int] = {
    11: 7920,
    12: 95040,
    22: 887040,      # Aut(M22) = M22:2
    23: 10200960,
    24: 244823040,
}
MATHIEU_SOCLE_ORDERS: Dict[int, int] = {
    11: 7920,
    12: 95040,
    22: 443520,
    23: 10200960,
    24: 244823040,
}
M11_ORDER = 7920
A7_ORDER = 2520


def _product(values) -> int:
    return reduce(lambda x, y: x * y, values, 1)


def _check_mathieu_orders() -> None:
    expected = {
        11: _product([11, 10, 9, 8]),
        12: _product([12, 11, 10, 9, 8]),
        22: _product([22, 21, 20, 48]) * 2,
        23: _product([23, 22, 21, 20, 48]),
        24: _product([24, 23, 22, 21, 20, 48]),
    }
    for v, order in expected.items():
        if MATHIEU_ORDERS[v] != order:
            raise RuntimeError(f"Mathieu order table broken at degree {v}: {MATHIEU_ORDERS[v]} != {order}")
    if MATHIEU_SOCLE_ORDERS[22] * 2 != MATHIEU_ORDERS[22]:
        raise RuntimeError("M22 socle order table broken")


_check_mathieu_orders()


def gl2_order(d: int) -> int:
    """|GL(d,2)| = |SL(d,2)|"""
    return _product(2**d - 2**i for i in range(d))


def psl2_is_3homog(q: int) -> bool:
    """PSL(2,q) on the projective line is 3-homogeneous iff q is even or q = 3 mod 4"""
    if not isinstance(q, int) or q < 2 or prime_power(q) is None:
        raise InvalidInputError(f"q must be a prime power, got {q!r}")
    if q <= 3:
        raise InvalidInputError(f"PSL(2,q) needs q > 3, got {q}")
    return q % 2 == 0 or q % 4 == 3


@dataclass(frozen=True)
class GroupSpec:
    """
    One catalog instance.

    param holds the family parameter (q for PSL2, d for Affine_SL, the degree
    otherwise). For PSL2, ext is the extension degree a | ne of
    G = PSL(2,q).a; it defaults to ne, the full PGammaL(2,q).
    """
    family: Family
    degree: int
    param: int
    ext: Optional[int] = None

    @property
    def two_transitive(self) -> bool:
        return True

    @property
    def name(self) -> str:
        if self.family is Family.PSL2:
            if self.ext is not None and self.ext != self.full_extension:
                return f"PSL2({self.param}).{self.ext}"
            return f"PSL2({self.param})"
        if self.family is Family.AFFINE_SL:
            return f"Affine_SL({self.param})"
        if self.family in (Family.ALTERNATING, Family.MATHIEU):
            return f"{self.family.value}({self.degree})"
        return self.family.value

    @property
    def params(self) -> Dict[str, int]:
        """Family parameters as a name -> integer mapping"""
        if self.family is Family.PSL2:
            return {"q": self.param, "a": self.extension}
        if self.family is Family.AFFINE_SL:
            return {"d": self.param}
        return {"v": self.degree}

    @property
    def n(self) -> int:
        """gcd(2, q-1) for PSL2 entries"""
        self._require_psl2()
        return math.gcd(2, self.param - 1)

    @property
    def e(self) -> int:
        self._require_psl2()
        return prime_power(self.param)[1]

    @property
    def full_extension(self) -> int:
        """ne = |PGammaL(2,q) : PSL(2,q)|"""
        self._require_psl2()
        return self.n * self.e

    @property
    def extension(self) -> int:
        self._require_psl2()
        return self.full_extension if self.ext is None else self.ext

    @property
    def extension_degrees(self) -> List[int]:
        """Every admissible a | ne"""
        return divisors(self.full_extension)

    @property
    def socle_order(self) -> int:
        f = self.family
        if f is Family.PSL2:
            q = self.param
            return (q + 1) * q * (q - 1) // self.n
        if f is Family.ALTERNATING:
            return math.factorial(self.degree) // 2
        if f is Family.MATHIEU:
            return MATHIEU_SOCLE_ORDERS[self.degree]
        if f is Family.M11_ON_12:
            return M11_ORDER
        # affine types: the regular normal subgroup of translations
        return self.degree

    @property
    def order(self) -> int:
        return order_of(self)

    def _require_psl2(self) -> None:
        if self.family is not Family.PSL2:
            raise InvalidInputError(f"{self.name} is not a PSL2 entry")

    def sort_key(self):
        return (self.degree, _FAMILY_RANK[self.family], self.param, self.extension if self.family is Family.PSL2 else 0)


def order_of(g: GroupSpec) -> int:
    """Order of the entry (maximal admissible extension unless ext is pinned)"""
    f = g.family
    if f is Family.AGL1_8:
        return 8 * 7
    if f is Family.AGAMMAL1_8:
        return 8 * 7 * 3
    if f is Family.AGAMMAL1_32:
        return 32 * 31 * 5
    if f is Family.AFFINE_SL:
        return g.degree * gl2_order(g.param)
    if f is Family.AFFINE_A7:
        return 16 * A7_ORDER
    if f is Family.PSL2:
        return g.socle_order * g.extension
    if f is Family.ALTERNATING:
        return math.factorial(g.degree)
    if f is Family.MATHIEU:
        return MATHIEU_ORDERS[g.degree]
    if f is Family.M11_ON_12:
        return M11_ORDER
    raise InvalidInputError(f"no order formula for {f}")


def alternating(v: int) -> GroupSpec:
    return GroupSpec(Family.ALTERNATING, v, v)


def affine_sl(d: int) -> GroupSpec:
    if d < 2:
        raise InvalidInputError(f"Affine_SL(d) needs d >= 2, got {d}")
    return GroupSpec(Family.AFFINE_SL, 2**d, d)


def mathieu(v: int) -> GroupSpec:
    if v not in MATHIEU_DEGREES:
        raise InvalidInputError(f"no Mathieu group of degree {v}")
    return GroupSpec(Family.MATHIEU, v, v)


def psl2_group(q: int, a: Optional[int] = None) -> GroupSpec:
    """PSL(2,q).a on q+1 points; a defaults to ne"""
    if not isinstance(q, int) or q < 4 or prime_power(q) is None:
        raise InvalidInputError(f"PSL2 needs a prime power q > 3, got {q!r}")
    g = GroupSpec(Family.PSL2, q + 1, q)
    if a is None or a == g.full_extension:
        return g
    if a not in g.extension_degrees:
        raise InvalidInputError(f"extension degree {a} does not divide ne = {g.full_extension} for q = {q}")
    return GroupSpec(Family.PSL2, q + 1, q, a)


def _entries_for_degree(v: int) -> List[GroupSpec]:
    entries = [alternating(v)]

    if v & (v - 1) == 0 and v >= 4:
        d = v.bit_length() - 1
        if v == 8:
            entries.append(GroupSpec(Family.AGL1_8, 8, 8))
            entries.append(GroupSpec(Family.AGAMMAL1_8, 8, 8))
        if v == 32:
            entries.append(GroupSpec(Family.AGAMMAL1_32, 32, 32))
        entries.append(affine_sl(d))
        if v == 16:
            entries.append(GroupSpec(Family.AFFINE_A7, 16, 16))

    if v - 1 >= 4:
        pp = prime_power(v - 1)
        if pp is not None and psl2_is_3homog(v - 1):
            entries.append(psl2_group(v - 1))

    if v in MATHIEU_DEGREES:
        entries.append(mathieu(v))
    if v == 12:
        entries.append(GroupSpec(Family.M11_ON_12, 12, 12))

    return sorted(entries, key=GroupSpec.sort_key)


def candidates_for_degree(v: int) -> List[GroupSpec]:
    """Every catalog instance of degree v >= 9"""
    if not isinstance(v, int) or v < 9:
        raise InvalidInputError(f"candidates_for_degree needs v >= 9, got {v!r}")
    return _entries_for_degree(v)


def small_affine_entries(v: int) -> List[GroupSpec]:
    """The one-dimensional semilinear affine entries (v = 8 or 32)"""
    if v not in (8, 32):
        raise InvalidInputError(f"small affine entries exist for v = 8 or 32 only, got {v}")
    small = (Family.AGL1_8, Family.AGAMMAL1_8, Family.AGAMMAL1_32)
    return [g for g in _entries_for_degree(v) if g.family in small]


def has_non_alternating(v: int) -> bool:
    return any(g.family is not Family.ALTERNATING for g in candidates_for_degree(v))


def catalog_entries(v_max: int, v_min: int = 9) -> List[GroupSpec]:
    """All entries with v_min <= degree <= v_max"""
    if v_min < 9:
        raise InvalidInputError(f"catalog starts at degree 9, got {v_min}")
    entries: List[GroupSpec] = []
    for v in range(v_min, v_max + 1):
        entries.extend(candidates_for_degree(v))
    logger.debug(f"[Catalog] {len(entries)} entries for degrees {v_min}..{v_max}")
    return entries


def lookup(family: str, degree: int, a: Optional[int] = None) -> GroupSpec:
    """Resolve a family tag and degree to a catalog entry"""
    fam = Family.parse(family)
    if fam is Family.PSL2:
        return psl2_group(degree - 1, a)
    matches = [g for g in _entries_for_degree(degree) if g.family is fam]
    if not matches:
        raise InvalidInputError(f"no {fam.value} entry of degree {degree}")
    return matches[0]


def describe(g: GroupSpec) -> str:
    """Catalog dump line: family, degree, order, socle order"""
    return f"{g.name} {g.degree} {g.order} {g.socle_order}"
