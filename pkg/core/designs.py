"""
Designs - Explicit incidence structures and brute-force verification
Builds the boolean quadruple systems, counts t-subsets per block, and checks
automorphisms and transitivity of generator sets on concrete examples
"""

import logging
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Sequence, Tuple

from .engine_config import DEFAULT_CONFIG, EngineConfig
from .errors import InvalidInputError, SizeCapExceeded
from .exactmath import binom
from .permgroup import GeneratorSet, Permutation, homogeneity_orbits, orbit

logger = logging.getLogger(__name__)

Block = Tuple[int, ...]

MAX_BOOLEAN_DIMENSION = 7


@dataclass(frozen=True)
class IncidenceStructure:
    """Points 0..v-1 and a canonical (sorted) list of distinct k-subsets"""
    v: int
    k: int
    blocks: Tuple[Block, ...]

    def __post_init__(self):
        canonical = tuple(sorted(tuple(sorted(block)) for block in self.blocks))
        object.__setattr__(self, "blocks", canonical)
        for block in canonical:
            if len(block) != self.k or len(set(block)) != self.k:
                raise InvalidInputError(f"block {block} does not have {self.k} distinct points")
            if block[0] < 0 or block[-1] >= self.v:
                raise InvalidInputError(f"block {block} has points outside 0..{self.v - 1}")
        for first, second in zip(canonical, canonical[1:]):
            if first == second:
                raise InvalidInputError(f"duplicate block {first}")

    @property
    def b(self) -> int:
        return len(self.blocks)

    @classmethod
    def from_blocks(cls, v: int, k: int, blocks: Iterable[Sequence[int]]) -> "IncidenceStructure":
        return cls(v, k, tuple(tuple(block) for block in blocks))


def boolean_sqs(n: int) -> IncidenceStructure:
    """The boolean Steiner 3-(2^n,4,1) design: 4-sets of F_2^n with zero sum"""
    if n < 3:
        raise InvalidInputError(f"boolean quadruple systems need n >= 3, got {n}")
    if n > MAX_BOOLEAN_DIMENSION:
        raise InvalidInputError(f"boolean quadruple systems supported for n <= {MAX_BOOLEAN_DIMENSION}, got {n}")
    v = 2**n
    blocks = []
    for a, b, c in combinations(range(v), 3):
        d = a ^ b ^ c
        if d > c:
            blocks.append((a, b, c, d))
    return IncidenceStructure(v, 4, tuple(blocks))


def verify_design(s: IncidenceStructure, t: int, config: EngineConfig = DEFAULT_CONFIG) -> Optional[int]:
    """lambda if every t-subset lies in exactly lambda blocks, else None"""
    if not 1 <= t <= s.k:
        raise InvalidInputError(f"t must lie in 1..k={s.k}, got {t}")
    total = binom(s.v, t)
    if total > config.max_tsubset_checks:
        raise SizeCapExceeded(f"{t}-subsets of {s.v} points", total, config.max_tsubset_checks)

    counts = Counter()
    for block in s.blocks:
        counts.update(combinations(block, t))

    if len(counts) != total:
        logger.debug(f"[Designs] {total - len(counts)} {t}-subsets lie in no block")
        return None
    values = set(counts.values())
    if len(values) != 1:
        return None
    return values.pop()


def relabel(s: IncidenceStructure, perm: Permutation) -> IncidenceStructure:
    """Image of the structure under a point bijection"""
    if perm.degree != s.v:
        raise InvalidInputError(f"permutation degree {perm.degree} != v = {s.v}")
    return IncidenceStructure(s.v, s.k, tuple(perm.image_of_set(block) for block in s.blocks))


def is_automorphism(p: Permutation, s: IncidenceStructure) -> bool:
    if p.degree != s.v:
        raise InvalidInputError(f"permutation degree {p.degree} != v = {s.v}")
    blockset = set(s.blocks)
    return all(p.image_of_set(block) in blockset for block in s.blocks)


def _require_automorphisms(gs: GeneratorSet, s: IncidenceStructure) -> None:
    for i, g in enumerate(gs.gens):
        if not is_automorphism(g, s):
            raise InvalidInputError(f"generator #{i} is not an automorphism of the structure")


def block_transitive(gs: GeneratorSet, s: IncidenceStructure) -> bool:
    """One orbit on blocks"""
    _require_automorphisms(gs, s)
    if not s.blocks:
        return True
    return len(orbit(gs, s.blocks[0])) == s.b


def point_transitive(gs: GeneratorSet, s: IncidenceStructure) -> bool:
    """One orbit on points"""
    _require_automorphisms(gs, s)
    return len(orbit(gs, 0)) == s.v


def point_homogeneous(gs: GeneratorSet, s: IncidenceStructure, h: int, config: EngineConfig = DEFAULT_CONFIG) -> bool:
    """One orbit on h-subsets of points (block-transitive groups of a t-design have h = t // 2)"""
    _require_automorphisms(gs, s)
    return homogeneity_orbits(gs, h, config) == 1
