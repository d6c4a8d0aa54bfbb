from fractions import Fraction

import pytest

from core.admissibility import DesignParams, kmax7
from core.elimination import (
    BranchVerdict,
    Reason,
    check_lemmas,
    eliminate_a7_16,
    eliminate_affine_small,
    eliminate_degree,
    eliminate_k_range,
    eliminate_psl2,
    eliminate_sl_d2,
    eq0_branch,
    eq_product,
    external_citation,
    k_upper,
    magnitude_lemma,
    parity_lemma_k,
    parity_lemma_q,
    stab_order,
    stab_order_candidates,
)
from core.errors import InvalidInputError
from core.exactmath import binom
from core.group_catalog import Family, alternating, lookup, mathieu, psl2_group


def _by_group(result, family):
    return [cert for cert in result.certificates if cert.group.family is family]


def _labels(certificates):
    return [(cert.k_label, cert.reason_label) for cert in certificates]


def test_k_upper():
    assert k_upper(9) == 8
    assert k_upper(33) == 11
    assert k_upper(24, 5) == 8


def test_stab_order():
    agl = lookup("AGL1_8", 8)
    # b = C(8,3) = 56 = |AGL(1,8)|: regular action on blocks
    assert stab_order(agl, DesignParams(3, 8, 3)) == 1
    assert stab_order(lookup("AGammaL1_32", 32), DesignParams(7, 32, 8)) is None
    assert stab_order(mathieu(24), DesignParams(7, 24, 8)) is None
    assert stab_order(mathieu(24), DesignParams(5, 24, 8)) == 244823040 // 759
    with pytest.raises(InvalidInputError):
        stab_order(lookup("AGammaL1_32", 32), DesignParams(7, 32, 10))
    with pytest.raises(InvalidInputError):
        stab_order(mathieu(24), DesignParams(7, 23, 8))


def test_stab_order_candidates():
    assert stab_order_candidates(psl2_group(32), DesignParams(7, 33, 9)) == {1: None, 5: None}
    assert stab_order_candidates(mathieu(24), DesignParams(5, 24, 8)) == {1: 322560}


def test_affine_small_degree_8():
    certificates = eliminate_affine_small(8)
    assert len(certificates) == 1
    cert = certificates[0]
    assert cert.reason is Reason.K_EXCEEDS_DEGREE
    assert cert.group.family is Family.AGAMMAL1_8
    assert cert.witnesses == {"t": 7, "k_min": 8, "v": 8}


def test_affine_small_degree_32():
    certificates = eliminate_affine_small(32)
    assert _labels(certificates) == [
        ("8", "B_EXCEEDS_GROUP_ORDER"),
        ("9", "B_EXCEEDS_GROUP_ORDER"),
        ("10", "DIVISIBILITY_FAIL(0)"),
        ("11", "DIVISIBILITY_FAIL(0)"),
    ]
    assert certificates[0].witnesses["b"] == 420732
    assert certificates[1].witnesses["b"] == 93496
    assert certificates[0].witnesses["group_order"] == 4960
    assert certificates[2].witnesses == {"numerator": 3365856, "denominator": 120}
    assert certificates[3].witnesses == {"numerator": 3365856, "denominator": 330}
    with pytest.raises(InvalidInputError):
        eliminate_affine_small(16)


def test_span_argument():
    cert = eliminate_sl_d2(4)
    assert cert.reason is Reason.SPAN_ARGUMENT
    assert cert.k_label == "8..9"
    assert cert.witnesses == {"d": 4, "v": 16, "forced_k": 15, "kmax": 9, "premise_verified": 1, "outside_orbit": 8}
    assert eliminate_sl_d2(5).witnesses["outside_orbit"] == 24

    large = eliminate_sl_d2(20)
    assert large.witnesses["forced_k"] == 2**20 - 1
    assert large.witnesses["kmax"] == 1029
    assert large.witnesses["premise_verified"] == 0
    assert large.citation
    with pytest.raises(InvalidInputError):
        eliminate_sl_d2(3)


def test_a7_on_16_points():
    certificates = eliminate_a7_16()
    assert _labels(certificates) == [("8", "DIVISIBILITY_FAIL(2)"), ("9", "DIVISIBILITY_FAIL(2)")]
    assert [c.witnesses for c in certificates] == [
        {"numerator": 2002, "denominator": 6},
        {"numerator": 2002, "denominator": 21},
    ]


def test_eq_product():
    assert eq_product(32) == 657720
    assert eq_product(8) == 360
    assert eq_product(23, 5) == 420


def test_eq0_branch():
    row = eq0_branch(32, 9, 5)
    assert (row.numerator, row.denominator, row.group_order) == (907200, 657720, 32736 * 5)
    assert row.verdict is BranchVerdict.PARITY
    assert row.stabilizer is None

    row = eq0_branch(32, 10, 5)
    assert (row.numerator, row.denominator) == (3024000, 657720)
    assert row.verdict is BranchVerdict.NOT_INTEGRAL

    # odd q never takes the parity route
    row = eq0_branch(19, 8, 1)
    assert row.numerator < 2 * row.denominator
    assert row.verdict is BranchVerdict.NOT_INTEGRAL

    row = eq0_branch(23, 8, 1, t=5)
    assert row.verdict is BranchVerdict.SOLUTION
    assert row.stabilizer == 8


def test_eq0_matches_group_order_over_block_count():
    for q in (8, 11, 16, 19, 23, 27, 31, 32, 43, 47, 64):
        v = q + 1
        for k in range(8, min(kmax7(v), q) + 1):
            num, den = binom(v, 7), binom(k, 7)
            if num % den:
                continue
            b = num // den
            for a in psl2_group(q).extension_degrees:
                row = eq0_branch(q, k, a)
                assert Fraction(psl2_group(q, a).order, b) == Fraction(row.numerator, row.denominator)


def test_psl2_small_field():
    certificates, survivors = eliminate_psl2(8)
    assert survivors == []
    assert _labels(certificates) == [("8", "EQ_A_FAIL")]
    assert certificates[0].witnesses == {"lhs": 3, "rhs": 6}


def test_psl2_q32():
    certificates, survivors = eliminate_psl2(32)
    assert survivors == []
    assert _labels(certificates) == [
        ("8", "PARITY_16"),
        ("9", "PARITY_16"),
        ("10", "PARITY_16"),
        ("11", "EQ_A_FAIL"),
    ]
    assert [c.witnesses["falling"] for c in certificates[:3]] == [40320, 181440, 604800]
    assert all(c.witnesses["eq_product"] == 657720 for c in certificates[:3])
    assert all(c.witnesses["val2_eq_product"] == 3 for c in certificates[:3])
    assert certificates[3].witnesses == {"lhs": 27, "rhs": 30}
    assert [[row.verdict for row in cert.table] for cert in certificates[:3]] == [
        [BranchVerdict.PARITY, BranchVerdict.PARITY],
        [BranchVerdict.PARITY, BranchVerdict.PARITY],
        [BranchVerdict.PARITY, BranchVerdict.NOT_INTEGRAL],
    ]
    assert all([row.a for row in cert.table] == [1, 5] for cert in certificates[:3])


def test_parity_route_for_even_fields():
    certificates, survivors = eliminate_psl2(64)
    assert survivors == []
    cert = next(c for c in certificates if c.k_label == "13")
    assert cert.reason is Reason.PARITY_16
    assert cert.witnesses == {"n": 1, "eq_product": 13388280, "falling": 8648640, "val2_eq_product": 3}
    assert [(row.a, row.verdict) for row in cert.table] == [
        (1, BranchVerdict.PARITY),
        (2, BranchVerdict.PARITY),
        (3, BranchVerdict.PARITY),
        (6, BranchVerdict.NOT_INTEGRAL),
    ]

    certificates, _ = eliminate_psl2(16)
    assert _labels(certificates) == [("8", "PARITY_16"), ("9", "EQ_A_FAIL")]


def test_psl2_other_reasons():
    certificates, _ = eliminate_psl2(11)
    assert _labels(certificates) == [("8", "CAMERON_EQUALITY_UNLISTED")]

    certificates, _ = eliminate_psl2(19)
    assert _labels(certificates) == [("8", "EQ0_NO_SOLUTION"), ("9", "TITS_BOUND")]
    assert certificates[1].witnesses == {"bound": 24}


@pytest.mark.parametrize("q", [7, 9, 12, 13])
def test_psl2_rejects_unsupported_q(q):
    with pytest.raises(InvalidInputError):
        eliminate_psl2(q)


def test_degree_12():
    result = eliminate_degree(12)
    assert result.survivors == []
    assert result.externally_cited == [alternating(12)]
    assert [(c.group.name, c.k_label, c.reason_label) for c in result.certificates] == [
        ("PSL2(11)", "8", "CAMERON_EQUALITY_UNLISTED"),
        ("PSL2(11)", "9..11", "CAMERON_BOUND"),
        ("Mathieu(12)", "8", "CAMERON_EQUALITY_UNLISTED"),
        ("Mathieu(12)", "9..11", "CAMERON_BOUND"),
        ("M11_on_12", "8", "CAMERON_EQUALITY_UNLISTED"),
        ("M11_on_12", "9..11", "CAMERON_BOUND"),
    ]


def test_degree_23():
    result = eliminate_degree(23)
    certificates = _by_group(result, Family.MATHIEU)
    assert _labels(certificates) == [
        ("8", "DIVISIBILITY_FAIL(6)"),
        ("9", "DIVISIBILITY_FAIL(6)"),
        ("10", "DIVISIBILITY_FAIL(6)"),
        ("11..22", "CAMERON_BOUND"),
    ]
    assert [c.witnesses for c in certificates[:3]] == [
        {"numerator": 17, "denominator": 2},
        {"numerator": 17, "denominator": 3},
        {"numerator": 17, "denominator": 4},
    ]


def test_degree_24():
    result = eliminate_degree(24)
    assert result.survivors == []
    m24 = _by_group(result, Family.MATHIEU)
    assert _labels(m24) == [
        ("8", "STABILIZER_NOT_DIVISOR"),
        ("9", "DIVISIBILITY_FAIL(5)"),
        ("10", "DIVISIBILITY_FAIL(6)"),
        ("11..23", "CAMERON_BOUND"),
    ]
    witnesses = m24[0].witnesses
    assert witnesses["b"] == 43263
    assert witnesses["pair_stabilizer"] == 443520
    assert witnesses["remainder"] == 244823040 % 43263 != 0

    psl = _by_group(result, Family.PSL2)
    assert [label for label, _ in _labels(psl)] == ["8", "9", "10", "11..23"]
    assert psl[2].reason is Reason.EQ_A_FAIL


def test_degree_16():
    result = eliminate_degree(16)
    assert _labels(_by_group(result, Family.AFFINE_SL)) == [("8..9", "SPAN_ARGUMENT"), ("10..15", "CAMERON_BOUND")]
    assert _labels(_by_group(result, Family.AFFINE_A7)) == [
        ("8", "DIVISIBILITY_FAIL(2)"),
        ("9", "DIVISIBILITY_FAIL(2)"),
        ("10..15", "CAMERON_BOUND"),
    ]


def test_every_block_size_is_covered_once():
    for v in (9, 12, 16, 17, 20, 22, 23, 24, 28, 32, 33, 64, 65):
        result = eliminate_degree(v)
        assert result.survivors == []
        covered = {}
        for cert in result.certificates:
            for k in range(cert.k_lo, cert.k_hi + 1):
                key = (cert.group, k)
                assert key not in covered
                covered[key] = cert.reason
        groups = {g for g, _ in covered}
        for g in groups:
            assert {k for h, k in covered if h == g} == set(range(8, v))


def test_range_and_citation_guards():
    assert eliminate_k_range(mathieu(24)).k_label == "11..23"
    assert eliminate_k_range(psl2_group(8)) is None
    with pytest.raises(InvalidInputError):
        eliminate_k_range(alternating(24))

    cited = external_citation(alternating(30))
    assert cited.reason is Reason.EXTERNAL_CITATION
    assert cited.k_label == "8..29"
    assert cited.citation
    with pytest.raises(InvalidInputError):
        external_citation(mathieu(24))


def test_strengths_without_block_sizes():
    assert k_upper(9, 10) == 10
    assert k_upper(13, 12) == 12
    assert eliminate_psl2(8, 12) == ([], [])
    assert eliminate_k_range(psl2_group(8), 10) is None
    for v, t in ((9, 8), (9, 10), (11, 10), (13, 12)):
        result = eliminate_degree(v, t)
        assert (result.certificates, result.survivors, result.externally_cited) == ([], [], [])


@pytest.mark.parametrize("t", [10, 12])
def test_large_strengths_stay_in_range(t):
    for v in (12, 16, 17, 20, 24, 28, 32, 33):
        result = eliminate_degree(v, t)
        seen = set()
        for cert in result.certificates:
            assert t + 1 <= cert.k_lo <= cert.k_hi <= v - 1
            for k in range(cert.k_lo, cert.k_hi + 1):
                assert (cert.group, k) not in seen
                seen.add((cert.group, k))
        assert all(t + 1 <= k <= v - 1 for _, k in result.survivors)


def test_eliminate_degree_guards():
    with pytest.raises(InvalidInputError):
        eliminate_degree(8)
    with pytest.raises(InvalidInputError):
        eliminate_degree(24, t=2)


def test_other_strengths_report_survivors():
    # the Witt design and its block-transitive groups
    result = eliminate_degree(24, t=5)
    found = {(g.name, k) for g, k in result.survivors}
    assert ("Mathieu(24)", 8) in found
    assert ("PSL2(23)", 8) in found


def test_lemmas():
    assert not magnitude_lemma(26)
    assert magnitude_lemma(27)
    assert parity_lemma_k(8)
    assert parity_lemma_q(3)
    assert check_lemmas() is None
