"""
Admissibility - Combinatorial existence conditions for t-(v,k,lambda) parameters
Divisibility of every lambda_s, the Tits and Cameron lower bounds on v,
and the Ray-Chaudhuri-Wilson bound on b, aggregated into one report
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Tuple

from .errors import InvalidInputError
from .exactmath import Ratio, binom, floor_sqrt_plus_half, format_ratio, isqrt, ratio

# (t, k, v) where equality in Cameron's bound is realised
CAMERON_EQUALITY_CASES = frozenset({
    (3, 4, 8),
    (3, 6, 22),
    (3, 12, 112),
    (4, 7, 23),
    (5, 8, 24),
})


class CameronVerdict(Enum):
    OK = "ok"
    EQUALITY_LISTED = "equality_listed"
    EQUALITY_UNLISTED = "equality_unlisted"
    VIOLATED = "violated"


@dataclass(frozen=True)
class DesignParams:
    """A t-(v,k,lambda) parameter tuple"""
    t: int
    v: int
    k: int
    lam: int = 1

    def __post_init__(self):
        for name in ("t", "v", "k", "lam"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool):
                raise InvalidInputError(f"{name} must be an integer, got {value!r}")
        if not 1 <= self.t <= self.k <= self.v:
            raise InvalidInputError(f"need 1 <= t <= k <= v, got t={self.t} k={self.k} v={self.v}")
        if self.lam < 1:
            raise InvalidInputError(f"lambda must be >= 1, got {self.lam}")

    @property
    def steiner(self) -> bool:
        return self.lam == 1

    @property
    def nontrivial(self) -> bool:
        return self.t < self.k < self.v

    def __str__(self) -> str:
        return f"{self.t}-({self.v},{self.k},{self.lam})"


@dataclass
class AdmissibilityReport:
    """Everything the counting conditions say about one parameter tuple"""
    params: DesignParams
    lambdas: List[Tuple[int, Ratio]]
    b: Ratio
    r: Ratio
    failed_divisibility: List[int]
    tits_ok: bool
    cameron_verdict: CameronVerdict
    rw_ok: bool
    admissible: bool = field(init=False)

    def __post_init__(self):
        self.admissible = (
            not self.failed_divisibility
            and self.tits_ok
            and self.cameron_verdict in (CameronVerdict.OK, CameronVerdict.EQUALITY_LISTED)
            and self.rw_ok
        )

    def summary(self) -> str:
        """One line verdict naming the first failed condition"""
        if self.admissible:
            return f"admissible: {self.params} (b = {self.b}, r = {self.r})"
        if self.failed_divisibility:
            s = self.failed_divisibility[0]
            num, den = lambda_terms(self.params, s)
            name = "b" if s == 0 else f"lambda_{s}"
            return f"inadmissible: {name} = {format_ratio(num, den)}"
        if not self.tits_ok:
            p = self.params
            return f"inadmissible: Tits bound v >= {(p.t + 1) * (p.k - p.t + 1)} fails"
        if self.cameron_verdict is CameronVerdict.VIOLATED:
            return "inadmissible: Cameron bound violated"
        if self.cameron_verdict is CameronVerdict.EQUALITY_UNLISTED:
            return "inadmissible: Cameron equality at an unlisted tuple"
        return "inadmissible: Ray-Chaudhuri-Wilson bound fails"


def _check_s(p: DesignParams, s: int) -> None:
    if not isinstance(s, int) or s < 0 or s > p.t:
        raise InvalidInputError(f"s must satisfy 0 <= s <= t={p.t}, got {s}")


def lambda_terms(p: DesignParams, s: int) -> Tuple[int, int]:
    """Unreduced (lambda*C(v-s, t-s), C(k-s, t-s))"""
    _check_s(p, s)
    return p.lam * binom(p.v - s, p.t - s), binom(p.k - s, p.t - s)


def lambda_s(p: DesignParams, s: int) -> Ratio:
    """Number of blocks through an s-subset, as an exact rational"""
    num, den = lambda_terms(p, s)
    return ratio(num, den)


def basic_counts(p: DesignParams) -> Tuple[Ratio, Ratio]:
    """(b, r) = (lambda_0, lambda_1)"""
    return lambda_s(p, 0), lambda_s(p, 1)


def divisibility_check(p: DesignParams) -> List[int]:
    """Every s in 0..t whose lambda_s is not an integer"""
    failed = []
    for s in range(p.t + 1):
        num, den = lambda_terms(p, s)
        if num % den:
            failed.append(s)
    return failed


def tits_ok(p: DesignParams) -> bool:
    """v >= (t+1)(k-t+1); only binding for non-trivial Steiner designs"""
    if not (p.steiner and p.nontrivial):
        return True
    return p.v >= (p.t + 1) * (p.k - p.t + 1)


def cameron_verdict(p: DesignParams) -> CameronVerdict:
    """v-t+1 against (k-t+2)(k-t+1), with the listed equality cases"""
    if not (p.steiner and p.nontrivial) or p.t < 3:
        return CameronVerdict.OK
    lhs = p.v - p.t + 1
    rhs = (p.k - p.t + 2) * (p.k - p.t + 1)
    if lhs > rhs:
        return CameronVerdict.OK
    if lhs < rhs:
        return CameronVerdict.VIOLATED
    if (p.t, p.k, p.v) in CAMERON_EQUALITY_CASES:
        return CameronVerdict.EQUALITY_LISTED
    return CameronVerdict.EQUALITY_UNLISTED


def rw_ok(p: DesignParams) -> bool:
    """Ray-Chaudhuri-Wilson: b >= C(v,s) (t=2s) or b >= 2C(v-1,s) (t=2s+1)"""
    s = p.t // 2
    b = lambda_s(p, 0)
    if p.t % 2 == 0:
        if p.v < p.k + s:
            return True
        return b >= binom(p.v, s)
    if p.v - 1 < p.k + s:
        return True
    return b >= 2 * binom(p.v - 1, s)


def bounds_check(p: DesignParams) -> Tuple[bool, CameronVerdict, bool]:
    """(tits_ok, cameron_verdict, rw_ok)"""
    return tits_ok(p), cameron_verdict(p), rw_ok(p)


def kmax7(v: int) -> int:
    """floor(sqrt(v) + 11/2): largest block size of a non-trivial Steiner 7-design on v points"""
    if not isinstance(v, int) or v < 9:
        raise InvalidInputError(f"kmax7 needs v >= 9, got {v!r}")
    return floor_sqrt_plus_half(v, 5)


def kmax_cameron(t: int, v: int) -> int:
    """Largest k with (k-t+2)(k-t+1) <= v-t+1"""
    if t < 3 or v < t:
        raise InvalidInputError(f"kmax_cameron needs 3 <= t <= v, got t={t} v={v}")
    n = v - t + 1
    m = (isqrt(4 * n + 1) - 1) // 2
    return m + t - 1


def stronger_bound(t: int, k: int) -> str:
    """Which of Tits ('tits') or Cameron ('cameron') bounds v harder; 'equal' at k = 2(t-1)"""
    if k < 2 * (t - 1):
        return "tits"
    if k > 2 * (t - 1):
        return "cameron"
    return "equal"


def admissible_report(p: DesignParams) -> AdmissibilityReport:
    b, r = basic_counts(p)
    tits, cameron, rw = bounds_check(p)
    return AdmissibilityReport(
        params=p,
        lambdas=[(s, lambda_s(p, s)) for s in range(p.t + 1)],
        b=b,
        r=r,
        failed_divisibility=divisibility_check(p),
        tits_ok=tits,
        cameron_verdict=cameron,
        rw_ok=rw,
    )
