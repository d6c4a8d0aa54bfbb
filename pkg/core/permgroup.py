"""
Permutation Groups - Desk-scale generators, orbits and stabilizers
Used to check catalog orders, 3-homogeneity and the premises of the
affine eliminations. Points are 0-based; the projective line over GF(q)
is indexed infinity -> 0 and field element x -> x + 1.
"""

import logging
import random
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Dict, Iterable, List, Sequence, Set, Tuple, Union

from sympy.combinatorics import Permutation as SympyPermutation
from sympy.combinatorics import PermutationGroup as SympyPermutationGroup

from .engine_config import DEFAULT_CONFIG, EngineConfig
from .errors import InvalidInputError, SizeCapExceeded, UnsupportedFamilyError
from .exactmath import binom
from .finite_field import MAX_FIELD_SIZE, field
from .group_catalog import A7_ORDER, Family, GroupSpec

logger = logging.getLogger(__name__)

MAX_AFFINE_DIMENSION = 5
MAX_ALTERNATING_DEGREE = 16


@dataclass(frozen=True)
class Permutation:
    """A bijection on 0..degree-1 given by its image list"""
    images: Tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if sorted(images) != list(range(len(images))):
            raise InvalidInputError("images do not form a permutation")

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(tuple(range(degree)))

    @classmethod
    def from_function(cls, degree: int, fn) -> "Permutation":
        return cls(tuple(fn(x) for x in range(degree)))

    @classmethod
    def from_line(cls, line: str) -> "Permutation":
        """Parse a space-separated 0-based image list"""
        try:
            images = tuple(int(token) for token in line.split())
        except ValueError as e:
            raise InvalidInputError(f"bad permutation line: {line!r}") from e
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def then(self, other: "Permutation") -> "Permutation":
        """Apply self, then other"""
        return Permutation(tuple(other.images[x] for x in self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for x, y in enumerate(self.images):
            inv[y] = x
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(x == y for x, y in enumerate(self.images))

    def image_of_set(self, points: Iterable[int]) -> Tuple[int, ...]:
        return tuple(sorted(self.images[x] for x in points))

    def to_line(self) -> str:
        return " ".join(str(x) for x in self.images)


@dataclass(frozen=True)
class GeneratorSet:
    """Generators of a permutation group of fixed degree"""
    degree: int
    gens: Tuple[Permutation, ...]

    def __post_init__(self):
        gens = tuple(self.gens)
        object.__setattr__(self, "gens", gens)
        if not gens:
            raise InvalidInputError("a generator set needs at least one generator")
        for g in gens:
            if g.degree != self.degree:
                raise InvalidInputError(f"generator of degree {g.degree} in a set of degree {self.degree}")

    def to_sympy(self) -> SympyPermutationGroup:
        return SympyPermutationGroup([SympyPermutation(list(g.images)) for g in self.gens])


Seed = Union[int, Iterable[int]]


# ---------------------------------------------------------------------------
# Generator constructions
# ---------------------------------------------------------------------------

def _cycle_bits(x: int, d: int) -> int:
    """Coordinate rotation e_i -> e_{i+1}, e_d -> e_1"""
    top = (x >> (d - 1)) & 1
    return ((x << 1) & ((1 << d) - 1)) | top


def _swap_bits(x: int) -> int:
    """e_1 <-> e_2"""
    b0, b1 = x & 1, (x >> 1) & 1
    return (x & ~3) | (b0 << 1) | b1


def _transvection(x: int) -> int:
    """e_1 -> e_1 + e_2"""
    return x ^ ((x & 1) << 1)


def linear_generators(d: int) -> GeneratorSet:
    """SL(d,2) acting linearly on the 2^d vectors of V(d,2), vector i having bit j as coordinate j+1"""
    if not 2 <= d <= MAX_AFFINE_DIMENSION:
        raise UnsupportedFamilyError(f"linear generators supported for 2 <= d <= {MAX_AFFINE_DIMENSION}, got {d}")
    v = 2**d
    return GeneratorSet(v, (
        Permutation.from_function(v, _transvection),
        Permutation.from_function(v, _swap_bits),
        Permutation.from_function(v, lambda x: _cycle_bits(x, d)),
    ))


def _translation(v: int) -> Permutation:
    return Permutation.from_function(v, lambda x: x ^ 1)


def _semilinear_generators(q: int, frobenius: bool) -> GeneratorSet:
    """AGL(1,q) or AGammaL(1,q) on GF(q), q = 2^e"""
    F = field(q)
    omega = F.primitive
    gens = [_translation(q), Permutation.from_function(q, lambda x: F.mul(omega, x))]
    if frobenius:
        gens.append(Permutation.from_function(q, F.frobenius))
    return GeneratorSet(q, tuple(gens))


def _projective_map(q: int, fn) -> Permutation:
    """Lift a map on GF(q) u {inf} (inf encoded as None) to point indices"""
    def on_index(i: int) -> int:
        image = fn(None if i == 0 else i - 1)
        return 0 if image is None else image + 1
    return Permutation.from_function(q + 1, on_index)


def psl2_generators(q: int, a: int = 1) -> GeneratorSet:
    """PSL(2,q).a on the projective line of q+1 points"""
    if q > MAX_FIELD_SIZE:
        raise UnsupportedFamilyError(f"PSL2 generators supported for q <= {MAX_FIELD_SIZE}, got {q}")
    F = field(q)
    omega = F.primitive
    square = F.mul(omega, omega)
    minus_one = F.neg(1)

    def translate(x):
        return None if x is None else F.add(x, 1)

    def scale_square(x):
        return None if x is None else F.mul(square, x)

    def invert(x):
        if x is None:
            return 0
        if x == 0:
            return None
        return F.mul(minus_one, F.inv(x))

    gens = [_projective_map(q, translate), _projective_map(q, scale_square), _projective_map(q, invert)]

    n = 1 if q % 2 == 0 else 2
    if (n * F.e) % a:
        raise InvalidInputError(f"extension degree {a} does not divide ne = {n * F.e}")
    field_part = a
    if n == 2 and a % 2 == 0:
        gens.append(_projective_map(q, lambda x: None if x is None else F.mul(omega, x)))
        field_part = a // 2
    if field_part > 1:
        step = F.e // field_part
        gens.append(_projective_map(q, lambda x: None if x is None else F.power(x, F.p ** step)))
    return GeneratorSet(q + 1, tuple(gens))


def _alternating_generators(v: int) -> GeneratorSet:
    three_cycle = Permutation.from_function(v, lambda x: {0: 1, 1: 2, 2: 0}.get(x, x))
    if v % 2:
        long_cycle = Permutation.from_function(v, lambda x: (x + 1) % v)
    else:
        long_cycle = Permutation.from_function(v, lambda x: 0 if x == 0 else x % (v - 1) + 1)
    return GeneratorSet(v, (three_cycle, long_cycle))


def _random_element(gens: Sequence[Permutation], rng: random.Random, length: int = 40) -> Permutation:
    g = Permutation.identity(gens[0].degree)
    for _ in range(length):
        g = g.then(rng.choice(gens))
    return g


@lru_cache(maxsize=None)
def a7_linear_generators() -> GeneratorSet:
    """
    A7 inside GL(4,2) = A8, found as a two-generated subgroup of order 2520.

    Subgroups of index 8 in A8 are exactly the point stabilisers A7, so the
    order alone identifies the group. The search is seeded, so the result is
    the same on every run.
    """
    linear = linear_generators(4).gens
    rng = random.Random(2520)
    for attempt in range(1, 2001):
        g, h = _random_element(linear, rng), _random_element(linear, rng)
        pair = GeneratorSet(16, (g, h))
        if pair.to_sympy().order() == A7_ORDER:
            logger.debug(f"[Permgroup] A7 generators found after {attempt} attempts")
            return pair
    raise RuntimeError("no A7 subgroup found in GL(4,2)")


def standard_generators(g: GroupSpec, config: EngineConfig = DEFAULT_CONFIG) -> GeneratorSet:
    """Generators of the catalog group in its natural action"""
    if g.degree > config.max_permgroup_degree:
        raise SizeCapExceeded(f"generators for {g.name}", g.degree, config.max_permgroup_degree)

    f = g.family
    if f is Family.AGL1_8:
        return _semilinear_generators(8, frobenius=False)
    if f is Family.AGAMMAL1_8:
        return _semilinear_generators(8, frobenius=True)
    if f is Family.AGAMMAL1_32:
        return _semilinear_generators(32, frobenius=True)
    if f is Family.AFFINE_SL:
        linear = linear_generators(g.param)
        return GeneratorSet(g.degree, linear.gens + (_translation(g.degree),))
    if f is Family.AFFINE_A7:
        return GeneratorSet(16, a7_linear_generators().gens + (_translation(16),))
    if f is Family.PSL2:
        return psl2_generators(g.param, g.extension)
    if f is Family.ALTERNATING:
        if g.degree > MAX_ALTERNATING_DEGREE:
            raise UnsupportedFamilyError(f"Alternating generators supported for v <= {MAX_ALTERNATING_DEGREE}")
        return _alternating_generators(g.degree)
    raise UnsupportedFamilyError(f"no generator construction for {g.name}")


# ---------------------------------------------------------------------------
# Orbits and stabilizers
# ---------------------------------------------------------------------------

def _check_points(gs: GeneratorSet, points: Iterable[int]) -> None:
    for x in points:
        if not isinstance(x, int) or not 0 <= x < gs.degree:
            raise InvalidInputError(f"point {x!r} outside 0..{gs.degree - 1}")


def orbit(gs: GeneratorSet, seed: Seed) -> List:
    """
    Orbit of a point (list of points) or of a point set (list of sorted
    tuples), in breadth-first discovery order.
    """
    if isinstance(seed, int):
        _check_points(gs, [seed])
        seen = {seed}
        order = [seed]
        queue = deque([seed])
        while queue:
            x = queue.popleft()
            for g in gs.gens:
                y = g.images[x]
                if y not in seen:
                    seen.add(y)
                    order.append(y)
                    queue.append(y)
        return order

    start = tuple(sorted(set(seed)))
    _check_points(gs, start)
    seen_sets = {start}
    found = [start]
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for g in gs.gens:
            image = g.image_of_set(current)
            if image not in seen_sets:
                seen_sets.add(image)
                found.append(image)
                queue.append(image)
    return found


def enumerated_order(gs: GeneratorSet, config: EngineConfig = DEFAULT_CONFIG, unbounded: bool = False) -> int:
    """
    Exact group order through a stabilizer chain.

    Orders above config.max_group_order raise SizeCapExceeded unless unbounded.
    """
    order = int(gs.to_sympy().order())
    if not unbounded and order > config.max_group_order:
        raise SizeCapExceeded("group order", order, config.max_group_order)
    return order


def homogeneity_orbits(gs: GeneratorSet, s: int, config: EngineConfig = DEFAULT_CONFIG) -> int:
    """Number of orbits on s-subsets; 1 means s-homogeneous"""
    if s < 0 or s > gs.degree:
        raise InvalidInputError(f"s must lie in 0..{gs.degree}, got {s}")
    total = binom(gs.degree, s)
    if total > config.max_subset_enumeration:
        raise SizeCapExceeded(f"{s}-subsets of {gs.degree} points", total, config.max_subset_enumeration)

    seen: Set[Tuple[int, ...]] = set()
    orbits = 0
    for subset in combinations(range(gs.degree), s):
        if subset in seen:
            continue
        orbits += 1
        seen.add(subset)
        queue = deque([subset])
        while queue:
            current = queue.popleft()
            for g in gs.gens:
                image = g.image_of_set(current)
                if image not in seen:
                    seen.add(image)
                    queue.append(image)
    return orbits


def setwise_stabilizer_order(gs: GeneratorSet, pointset: Iterable[int], config: EngineConfig = DEFAULT_CONFIG) -> int:
    """|G_S| = |G| / |S^G|"""
    return enumerated_order(gs, config) // len(orbit(gs, pointset))


def setwise_stabilizer_generators(gs: GeneratorSet, pointset: Iterable[int]) -> GeneratorSet:
    """Schreier generators of the setwise stabilizer, from the set-orbit transversal"""
    start = tuple(sorted(set(pointset)))
    _check_points(gs, start)
    transversal: Dict[Tuple[int, ...], Permutation] = {start: Permutation.identity(gs.degree)}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for g in gs.gens:
            image = g.image_of_set(current)
            if image not in transversal:
                transversal[image] = transversal[current].then(g)
                queue.append(image)

    schreier: Dict[Tuple[int, ...], Permutation] = {}
    for current, u in transversal.items():
        for g in gs.gens:
            image = g.image_of_set(current)
            s = u.then(g).then(transversal[image].inverse())
            if not s.is_identity():
                schreier.setdefault(s.images, s)

    if not schreier:
        return GeneratorSet(gs.degree, (Permutation.identity(gs.degree),))
    return GeneratorSet(gs.degree, tuple(schreier[key] for key in sorted(schreier)))


# e_1, e_2, e_3 span the vectors 0..7
SPAN_E = tuple(range(8))


@lru_cache(maxsize=None)
def span_premise(d: int) -> int:
    """
    Orbit length, on the vectors outside E = <e1,e2,e3>, of the setwise
    stabilizer of E in SL(d,2). The affine span argument needs 2^d - 8.
    """
    if d < 4:
        raise InvalidInputError(f"span premise needs d >= 4, got {d}")
    stabilizer = setwise_stabilizer_generators(linear_generators(d), SPAN_E)
    outside = orbit(stabilizer, 8)
    if any(x < 8 for x in outside):
        raise RuntimeError("stabilizer of E moved a point of E outside")
    logger.debug(f"[Permgroup] SL({d},2)_E orbit outside E has {len(outside)} points")
    return len(outside)
