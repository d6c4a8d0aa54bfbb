"""
Elimination - Case-by-case arithmetic eliminations with replayable certificates
Every (group, k) candidate for a block-transitive Steiner t-design is either
killed by a named failing condition, cited externally, or reported as a survivor.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

from .admissibility import (
    CameronVerdict,
    DesignParams,
    cameron_verdict,
    divisibility_check,
    kmax7,
    kmax_cameron,
    lambda_terms,
    tits_ok,
)
from .errors import InvalidInputError
from .exactmath import falling, prime_power, val2
from .group_catalog import (
    Family,
    GroupSpec,
    affine_sl,
    candidates_for_degree,
    psl2_group,
    psl2_is_3homog,
    small_affine_entries,
)
from .permgroup import MAX_AFFINE_DIMENSION, span_premise

logger = logging.getLogger(__name__)

STEINER_T = 7
LEMMA_MAGNITUDE_K_MIN = 27

ALTERNATING_CITATION = (
    "Cameron & Praeger (1993), Block-transitive t-designs I: point-imprimitive designs, "
    "Sect. 2, Prop. 2.4: Alternating(v) cannot act block-transitively on a non-trivial "
    "Steiner 7-design"
)
SPAN_CITATION = (
    "the stabilizer in SL(d,2) of a 3-dimensional subspace E is transitive on the 2^d - 8 "
    "vectors outside E"
)


class Reason(Enum):
    """Why a case is eliminated"""
    K_EXCEEDS_DEGREE = "K_EXCEEDS_DEGREE"
    CAMERON_BOUND = "CAMERON_BOUND"
    CAMERON_EQUALITY_UNLISTED = "CAMERON_EQUALITY_UNLISTED"
    TITS_BOUND = "TITS_BOUND"
    DIVISIBILITY_FAIL = "DIVISIBILITY_FAIL"
    B_EXCEEDS_GROUP_ORDER = "B_EXCEEDS_GROUP_ORDER"
    STABILIZER_NOT_INTEGRAL = "STABILIZER_NOT_INTEGRAL"
    STABILIZER_NOT_DIVISOR = "STABILIZER_NOT_DIVISOR"
    EQ_A_FAIL = "EQ_A_FAIL"
    EQ0_NO_SOLUTION = "EQ0_NO_SOLUTION"
    PARITY_16 = "PARITY_16"
    SPAN_ARGUMENT = "SPAN_ARGUMENT"
    EXTERNAL_CITATION = "EXTERNAL_CITATION"


class BranchVerdict(Enum):
    """Outcome of the block-stabilizer equation for one extension degree a"""
    NOT_INTEGRAL = "STABILIZER_NOT_INTEGRAL"
    NOT_DIVISOR = "STABILIZER_NOT_DIVISOR"
    PARITY = "PARITY_16"
    SOLUTION = "SOLUTION"


@dataclass(frozen=True)
class Eq0Branch:
    """
    One row of the PSL(2,q) table: |    if q % 2 == 0 and numerator < 2 * denominator and val2(numerator) != val2(denominator):
        # n = 1 and |G_B| < 2 leave only |G_B| = 1, which the 2-adic valuations rule out
        verdict = BranchVerdict.PARITY
    elif numerator % denominator:
        verdict = BranchVerdict.NOT_INTEGRAL
| = numerator / denominator with
    numerator = falling(k,t) * a and denominator = falling(q-2, t-3) * n.
    """
    a: int
    numerator: int
    denominator: int
    group_order: int
    verdict: BranchVerdict

    @property
    def stabilizer(self) -> Optional[int]:
        if self.numerator % self.denominator:
            return None
        return self.numerator // self.denominator


@dataclass
class EliminationCertificate:
    """One eliminated (group, k-range) case with the numbers that recheck it"""
    t: int
    group: GroupSpec
    k_lo: int
    k_hi: int
    reason: Reason
    witnesses: Dict[str, int] = field(default_factory=dict)
    s: Optional[int] = None
    table: List[Eq0Branch] = field(default_factory=list)
    citation: Optional[str] = None

    @property
    def v(self) -> int:
        return self.group.degree

    @property
    def k_label(self) -> str:
        return str(self.k_lo) if self.k_lo == self.k_hi else f"{self.k_lo}..{self.k_hi}"

    @property
    def reason_label(self) -> str:
        if self.reason is Reason.DIVISIBILITY_FAIL:
            return f"{self.reason.value}({self.s})"
        return self.reason.value

    def sort_key(self):
        return (self.v,) + self.group.sort_key()[1:] + (self.k_lo,)

    def __str__(self) -> str:
        return f"{self.group.name} v={self.v} k={self.k_label}: {self.reason_label}"


@dataclass
class SweepResult:
    certificates: List[EliminationCertificate] = field(default_factory=list)
    survivors: List[Tuple[GroupSpec, int]] = field(default_factory=list)
    externally_cited: List[GroupSpec] = field(default_factory=list)

    def extend(self, other: "SweepResult") -> None:
        self.certificates.extend(other.certificates)
        self.survivors.extend(other.survivors)
        self.externally_cited.extend(other.externally_cited)


# ---------------------------------------------------------------------------
# Shared witness builders
# ---------------------------------------------------------------------------

def k_upper(v: int, t: int = STEINER_T) -> int:
    """Largest block size a non-trivial Steiner t-design on v points can have; t when there is none"""
    if v - 1 <= t:
        return t
    kmax = kmax7(v) if t == STEINER_T else kmax_cameron(t, v)
    return min(kmax, v - 1)


def _cameron_witnesses(t: int, v: int, k: int) -> Dict[str, int]:
    return {"lhs": v - t + 1, "rhs": (k - t + 2) * (k - t + 1)}


def _divisibility_certificate(g: GroupSpec, p: DesignParams, s: int) -> EliminationCertificate:
    num, den = lambda_terms(p, s)
    return EliminationCertificate(p.t, g, p.k, p.k, Reason.DIVISIBILITY_FAIL,
                                  {"numerator": num, "denominator": den}, s=s)


def _pair_stabilizer(g: GroupSpec) -> int:
    """|G_xy| of a two-transitive group"""
    return g.order // (g.degree * (g.degree - 1))


def stab_order(g: GroupSpec, p: DesignParams) -> Optional[int]:
    """|G_B| = |G| / b when b divides |G|, else None"""
    if p.v != g.degree:
        raise InvalidInputError(f"{g.name} has degree {g.degree}, parameters have v = {p.v}")
    num, den = lambda_terms(p, 0)
    if num % den:
        raise InvalidInputError(f"b = {num}/{den} is not integral for {p}")
    b = num // den
    order = g.order
    if b > order or order % b:
        return None
    return order // b


def stab_order_candidates(g: GroupSpec, p: DesignParams) -> Dict[int, Optional[int]]:
    """|G_B| for every extension degree a | ne of a PSL2 entry"""
    if g.family is not Family.PSL2:
        return {1: stab_order(g, p)}
    return {a: stab_order(psl2_group(g.param, a), p) for a in g.extension_degrees}


def _stabilizer_certificate(g: GroupSpec, p: DesignParams) -> Optional[EliminationCertificate]:
    num, den = lambda_terms(p, 0)
    b = num // den
    order = g.order
    witnesses = {"b": b, "group_order": order, "pair_stabilizer": _pair_stabilizer(g)}
    if b > order:
        return EliminationCertificate(p.t, g, p.k, p.k, Reason.B_EXCEEDS_GROUP_ORDER, witnesses)
    if order % b:
        witnesses["remainder"] = order % b
        return EliminationCertificate(p.t, g, p.k, p.k, Reason.STABILIZER_NOT_DIVISOR, witnesses)
    return None


# ---------------------------------------------------------------------------
# Per-family handlers
# ---------------------------------------------------------------------------

def eliminate_affine_small(v: int) -> List[EliminationCertificate]:
    """AGammaL(1,8) and AGammaL(1,32), the one-dimensional semilinear affine cases"""
    if v not in (8, 32):
        raise InvalidInputError(f"eliminate_affine_small needs v = 8 or 32, got {v}")
    t = STEINER_T
    if v == 8:
        g = next(e for e in small_affine_entries(8) if e.family is Family.AGAMMAL1_8)
        return [EliminationCertificate(t, g, t + 1, t + 1, Reason.K_EXCEEDS_DEGREE,
                                       {"t": t, "k_min": t + 1, "v": v})]

    g = small_affine_entries(32)[0]
    certificates = []
    for k in range(t + 1, k_upper(v) + 1):
        p = DesignParams(t, v, k)
        failed = divisibility_check(p)
        if 0 in failed:
            certificates.append(_divisibility_certificate(g, p, 0))
            continue
        stab = _stabilizer_certificate(g, p)
        if stab is not None and stab.reason is Reason.B_EXCEEDS_GROUP_ORDER:
            certificates.append(stab)
        elif failed:
            certificates.append(_divisibility_certificate(g, p, max(failed)))
        elif stab is not None:
            certificates.append(stab)
        else:
            raise RuntimeError(f"{g.name} survives at k = {k}")
    return certificates


def eliminate_sl_d2(d: int) -> EliminationCertificate:
    """
    Affine SL(d,2) on 2^d points.

    Any 7 points spanning a 3-space E force the block through them to contain
    E and every vector outside E, so k >= 2^d - 8 + 7 = 2^d - 1, beyond kmax7.
    """
    if not isinstance(d, int) or d < 4:
        raise InvalidInputError(f"eliminate_sl_d2 needs d >= 4, got {d!r}")
    g = affine_sl(d)
    v = g.degree
    kmax = kmax7(v)
    witnesses = {"d": d, "v": v, "forced_k": 2**d - 1, "kmax": kmax}
    citation = None
    if d <= MAX_AFFINE_DIMENSION:
        witnesses["premise_verified"] = 1
        witnesses["outside_orbit"] = span_premise(d)
    else:
        witnesses["premise_verified"] = 0
        citation = SPAN_CITATION
    return EliminationCertificate(STEINER_T, g, STEINER_T + 1, k_upper(v), Reason.SPAN_ARGUMENT,
                                  witnesses, citation=citation)


def eliminate_a7_16() -> List[EliminationCertificate]:
    """A7 inside GL(4,2): lambda_2 kills k = 8 and k = 9"""
    g = next(e for e in candidates_for_degree(16) if e.family is Family.AFFINE_A7)
    certificates = []
    for k in range(STEINER_T + 1, k_upper(16) + 1):
        p = DesignParams(STEINER_T, 16, k)
        if 2 not in divisibility_check(p):
            raise RuntimeError(f"lambda_2 is integral for {p}")
        certificates.append(_divisibility_certificate(g, p, 2))
    return certificates


def eq_product(q: int, t: int = STEINER_T) -> int:
    """falling(q+1, t) / ((q+1) q (q-1)); (q-2)(q-3)(q-4)(q-5) for t = 7"""
    return falling(q - 2, t - 3)


def eq0_branch(q: int, k: int, a: int, t: int = STEINER_T) -> Eq0Branch:
    """Solve the block-stabilizer equation for one extension degree"""
    g = psl2_group(q, a)
    return _branch(q, k, a, t, g.n, eq_product(q, t), g.socle_order)


def _branch(q: int, k: int, a: int, t: int, n: int, product: int, socle: int) -> Eq0Branch:
    numerator = falling(k, t) * a
    denominator = product * n
    order = socle * a
    if q % 2 == 0 and numerator < 2 * denominator and val2(numerator) != val2(denominator):
        # n = 1 and |G_B| < 2 leave only |G_B| = 1, which the 2-adic valuations rule out
        verdict = BranchVerdict.PARITY
    elif numerator % denominator:
        verdict = BranchVerdict.NOT_INTEGRAL
    elif order % (numerator // denominator):
        verdict = BranchVerdict.NOT_DIVISOR
    else:
        verdict = BranchVerdict.SOLUTION
    return Eq0Branch(a, numerator, denominator, order, verdict)


def eliminate_psl2(q: int, t: int = STEINER_T) -> Tuple[List[EliminationCertificate], List[Tuple[GroupSpec, int]]]:
    """
    PSL(2,q).a on the projective line, every a | ne at once.

    Order of checks per k: subdegree inequality, Cameron equality,
    Tits, the stabilizer table over a, then divisibility for the branches
    the table leaves standing.

    For even q a branch with |G_B| < 2 is decided by parity before
    integrality: 16 divides falling(k, 7) but not (q-2)(q-3)(q-4)(q-5), so
    |G_B| = 1 is impossible. Any such branch makes the certificate PARITY_16.
    """
    if not isinstance(q, int) or q < 8 or prime_power(q) is None or not psl2_is_3homog(q):
        raise InvalidInputError(f"eliminate_psl2 needs a 3-homogeneous prime power q >= 8, got {q!r}")
    g = psl2_group(q)
    v = q + 1
    certificates: List[EliminationCertificate] = []
    survivors: List[Tuple[GroupSpec, int]] = []
    k_hi = k_upper(v, t)
    if k_hi <= t:
        return certificates, survivors
    n, product, socle = g.n, eq_product(q, t), g.socle_order
    degrees = g.extension_degrees

    for k in range(t + 1, k_hi + 1):
        p = DesignParams(t, v, k)
        cam = _cameron_witnesses(t, v, k)
        if cam["lhs"] < cam["rhs"]:
            certificates.append(EliminationCertificate(t, g, k, k, Reason.EQ_A_FAIL, cam))
            continue
        if cameron_verdict(p) is CameronVerdict.EQUALITY_UNLISTED:
            certificates.append(EliminationCertificate(t, g, k, k, Reason.CAMERON_EQUALITY_UNLISTED, cam))
            continue
        if not tits_ok(p):
            certificates.append(EliminationCertificate(t, g, k, k, Reason.TITS_BOUND,
                                                       {"bound": (t + 1) * (k - t + 1)}))
            continue

        table = [_branch(q, k, a, t, n, product, socle) for a in degrees]
        standing = [row for row in table if row.verdict is BranchVerdict.SOLUTION]
        if not standing:
            witnesses = {"n": n, "eq_product": product, "falling": falling(k, t)}
            if any(row.verdict is BranchVerdict.PARITY for row in table):
                witnesses["val2_eq_product"] = val2(product * n)
                reason = Reason.PARITY_16
            else:
                reason = Reason.EQ0_NO_SOLUTION
            certificates.append(EliminationCertificate(t, g, k, k, reason, witnesses, table=table))
            continue

        failed = divisibility_check(p)
        if failed:
            certificates.append(_divisibility_certificate(g, p, max(failed)))
            continue
        for row in standing:
            logger.warning(f"[Eliminate] PSL2({q}).{row.a} survives at k = {k} with |G_B| = {row.stabilizer}")
            survivors.append((psl2_group(q, row.a), k))

    return certificates, survivors


def _eliminate_generic(g: GroupSpec, t: int) -> Tuple[List[EliminationCertificate], List[Tuple[GroupSpec, int]]]:
    """Counting conditions, then the block count against |G|"""
    v = g.degree
    certificates: List[EliminationCertificate] = []
    survivors: List[Tuple[GroupSpec, int]] = []
    for k in range(t + 1, k_upper(v, t) + 1):
        p = DesignParams(t, v, k)
        verdict = cameron_verdict(p)
        if verdict is CameronVerdict.EQUALITY_UNLISTED:
            certificates.append(EliminationCertificate(t, g, k, k, Reason.CAMERON_EQUALITY_UNLISTED,
                                                       _cameron_witnesses(t, v, k)))
            continue
        failed = divisibility_check(p)
        if failed:
            certificates.append(_divisibility_certificate(g, p, max(failed)))
            continue
        if verdict is CameronVerdict.VIOLATED:
            certificates.append(EliminationCertificate(t, g, k, k, Reason.CAMERON_BOUND,
                                                       _cameron_witnesses(t, v, k)))
            continue
        if not tits_ok(p):
            certificates.append(EliminationCertificate(t, g, k, k, Reason.TITS_BOUND,
                                                       {"bound": (t + 1) * (k - t + 1)}))
            continue
        stab = _stabilizer_certificate(g, p)
        if stab is not None:
            certificates.append(stab)
            continue
        logger.warning(f"[Eliminate] {g.name} survives at k = {k}")
        survivors.append((g, k))
    return certificates, survivors


def eliminate_k_range(g: GroupSpec, t: int = STEINER_T) -> Optional[EliminationCertificate]:
    """One CAMERON_BOUND certificate for the block sizes above the k cap, up to v-1"""
    if g.family is Family.ALTERNATING:
        raise InvalidInputError("Alternating(v) is covered by an external citation")
    v = g.degree
    k_lo = k_upper(v, t) + 1
    if k_lo > v - 1:
        return None
    witnesses = _cameron_witnesses(t, v, k_lo)
    if witnesses["lhs"] >= witnesses["rhs"]:
        raise RuntimeError(f"Cameron bound does not exclude k = {k_lo} at v = {v}")
    return EliminationCertificate(t, g, k_lo, v - 1, Reason.CAMERON_BOUND, witnesses)


def external_citation(g: GroupSpec, t: int = STEINER_T) -> EliminationCertificate:
    if g.family is not Family.ALTERNATING:
        raise InvalidInputError(f"{g.name} is eliminated arithmetically, not by citation")
    return EliminationCertificate(t, g, t + 1, g.degree - 1, Reason.EXTERNAL_CITATION,
                                  citation=ALTERNATING_CITATION)


def eliminate_degree(v: int, t: int = STEINER_T) -> SweepResult:
    """Every catalog candidate of degree v"""
    if not isinstance(v, int) or v < 9:
        raise InvalidInputError(f"eliminate_degree needs v >= 9, got {v!r}")
    if t < 3:
        raise InvalidInputError(f"eliminations need t >= 3, got {t}")
    result = SweepResult()
    if v - 1 <= t:
        logger.debug(f"[Eliminate] v={v}: no block size between t+1 = {t + 1} and v-1")
        return result
    for g in candidates_for_degree(v):
        if g.family is Family.ALTERNATING:
            result.externally_cited.append(g)
            continue

        survivors: List[Tuple[GroupSpec, int]] = []
        if g.family is Family.PSL2:
            certificates, survivors = eliminate_psl2(g.param, t)
        elif t != STEINER_T:
            certificates, survivors = _eliminate_generic(g, t)
        elif g.family is Family.AFFINE_SL:
            certificates = [eliminate_sl_d2(g.param)]
        elif g.family is Family.AGAMMAL1_32:
            certificates = eliminate_affine_small(32)
        elif g.family is Family.AFFINE_A7:
            certificates = eliminate_a7_16()
        else:
            certificates, survivors = _eliminate_generic(g, t)

        result.certificates.extend(certificates)
        result.survivors.extend(survivors)
        tail = eliminate_k_range(g, t)
        if tail is not None:
            result.certificates.append(tail)

    logger.debug(f"[Eliminate] v={v}: {len(result.certificates)} certificates, {len(result.survivors)} survivors")
    return result


# ---------------------------------------------------------------------------
# The universal lemmas behind the PSL(2,q) case
# ---------------------------------------------------------------------------

def magnitude_lemma(k: int) -> bool:
    """k(k-1)(k-2)(k-3) < 2((k-5)(k-6))^2, claimed for k >= 27"""
    return falling(k, 4) < 2 * ((k - 5) * (k - 6)) ** 2


def parity_lemma_k(k: int) -> bool:
    """16 divides k(k-1)...(k-6)"""
    return val2(falling(k, 7)) >= 4


def parity_lemma_q(e: int) -> bool:
    """(q-2)(q-3)(q-4)(q-5) has 2-adic valuation exactly 3 for q = 2^e"""
    q = 2**e
    return val2(eq_product(q)) == 3


def check_lemmas(k_max: int = 10**4, e_max: int = 60) -> Optional[Tuple[str, int]]:
    """First counterexample as (lemma, argument), or None"""
    for k in range(LEMMA_MAGNITUDE_K_MIN, k_max + 1):
        if not magnitude_lemma(k):
            return "magnitude", k
    for k in range(STEINER_T + 1, k_max + 1):
        if not parity_lemma_k(k):
            return "parity_k", k
    for e in range(3, e_max + 1):
        if not parity_lemma_q(e):
            return "parity_q", e
    return None
