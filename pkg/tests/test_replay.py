import pytest

from build.certificates import (
    BranchRecord,
    CertificateRecord,
    certificate_record,
    dumps,
    iter_certificate_file,
    loads,
    write_certificates,
)
from build.replay import CheckFailed, _group_order, check_certificate, replay_file
from core.elimination import Reason, eliminate_degree, eliminate_psl2, external_citation
from core.errors import InvalidInputError, ReplayFailure
from core.group_catalog import GroupSpec, affine_sl, alternating, catalog_entries, lookup, psl2_group
from core.sweep import sweep

V_MAX = 33


@pytest.fixture(scope="module")
def result():
    return sweep(7, V_MAX)


@pytest.fixture
def cert_file(tmp_path, result):
    return write_certificates(result, tmp_path / "certs.json", 7, V_MAX)


def _records(path):
    return [record for section, record in iter_certificate_file(path) if isinstance(record, CertificateRecord)]


def _psl64_k13():
    certificates, _ = eliminate_psl2(64)
    cert = next(c for c in certificates if c.k_label == "13")
    return certificate_record(cert)


def test_layout(result):
    text = dumps(result, 7, V_MAX)
    lines = text.splitlines()
    assert lines[0] == '{"spec_version":"1","t":"7","v_max":"33","certificates":['
    assert lines[-1] == "]}"
    assert '],"survivors":[' in lines
    assert '],"external":[' in lines

    document = loads(text)
    assert list(document) == ["spec_version", "t", "v_max", "certificates", "survivors", "external"]
    assert len(document["certificates"]) == len(result.certificates)
    assert document["survivors"] == []
    assert len(document["external"]) == len(result.externally_cited)
    for entry in document["certificates"]:
        assert all(isinstance(value, str) for value in entry["witnesses"].values())


def test_record_fields():
    record = certificate_record(external_citation(alternating(12)))
    assert record.family == "Alternating"
    assert record.params == {"v": "12"}
    assert record.k == "8..11"
    assert record.reason == "EXTERNAL_CITATION"
    assert "table" not in record.model_dump(exclude_none=True)


def test_replay_accepts_the_sweep(cert_file, result):
    report = replay_file(cert_file)
    assert (report.t, report.v_max) == (7, V_MAX)
    assert report.certificates == len(result.certificates)
    assert report.external == len(result.externally_cited)
    assert report.survivors == 0
    assert report.summary().startswith("replay ok:")


def test_every_single_witness_mutation_is_rejected(cert_file):
    for record in _records(cert_file):
        check_certificate(record, 7)
        for name, value in record.witnesses.items():
            for delta in (-1, 1):
                mutated = record.model_copy(update={"witnesses": {**record.witnesses, name: str(int(value) + delta)}})
                with pytest.raises(CheckFailed):
                    check_certificate(mutated, 7)


def test_table_mutation_is_rejected(cert_file):
    record = next(r for r in _records(cert_file) if r.table)
    rows = list(record.table)
    rows[0] = rows[0].model_copy(update={"numerator": str(int(rows[0].numerator) + 1)})
    with pytest.raises(CheckFailed):
        check_certificate(record.model_copy(update={"table": rows}), 7)
    with pytest.raises(CheckFailed):
        check_certificate(record.model_copy(update={"table": rows[1:]}), 7)


def test_wrong_reason_is_rejected(cert_file):
    record = next(r for r in _records(cert_file) if r.reason == "EQ_A_FAIL")
    with pytest.raises(CheckFailed):
        check_certificate(record.model_copy(update={"reason": "TITS_BOUND"}), 7)
    with pytest.raises(CheckFailed):
        check_certificate(record.model_copy(update={"reason": "NO_SUCH_REASON"}), 7)


@pytest.mark.parametrize("product, reason", [
    ("57120", "EQ0_NO_SOLUTION"),
    ("657720", "PARITY_16"),
])
def test_tampered_file_fails_replay(cert_file, product, reason):
    text = cert_file.read_text()
    stored = f'"eq_product":"{product}"'
    assert stored in text
    cert_file.write_text(text.replace(stored, f'"eq_product":"{int(product) + 1}"', 1))
    with pytest.raises(ReplayFailure) as info:
        replay_file(cert_file)
    assert info.value.reason == reason


def test_citation_in_certificate_section_fails(tmp_path):
    record = certificate_record(external_citation(alternating(9)))
    text = ('{"spec_version":"1","t":"7","v_max":"9","certificates":[\n'
            + record.model_dump_json(exclude_none=True)
            + '\n],"survivors":[\n],"external":[\n]}\n')
    path = tmp_path / "bad.json"
    path.write_text(text)
    with pytest.raises(ReplayFailure):
        replay_file(path)


def test_truncated_file(cert_file):
    lines = cert_file.read_text().splitlines()
    cert_file.write_text("\n".join(lines[:-1]) + "\n")
    with pytest.raises(InvalidInputError):
        replay_file(cert_file)


def test_missing_file(tmp_path):
    with pytest.raises(InvalidInputError):
        replay_file(tmp_path / "absent.json")


def test_parity_certificate_replays():
    # q = 64, k = 13: numerators 8648640 a against 13388280, 2-adic valuations 6 + v2(a) and 3
    record = _psl64_k13()
    assert record.reason == "PARITY_16"
    assert record.witnesses["val2_eq_product"] == "3"
    assert [(row.a, row.verdict) for row in record.table] == [
        ("1", "PARITY_16"), ("2", "PARITY_16"), ("3", "PARITY_16"), ("6", "STABILIZER_NOT_INTEGRAL"),
    ]
    check_certificate(record, 7)

    overreach = [row.model_copy(update={"verdict": "PARITY_16"}) for row in record.table]
    with pytest.raises(CheckFailed):
        check_certificate(record.model_copy(update={"table": overreach}), 7)

    plain = [row.model_copy(update={"verdict": "STABILIZER_NOT_INTEGRAL"}) for row in record.table]
    witnesses = {name: value for name, value in record.witnesses.items() if name != "val2_eq_product"}
    with pytest.raises(CheckFailed):
        check_certificate(record.model_copy(update={"table": plain}), 7)
    check_certificate(record.model_copy(update={"reason": "EQ0_NO_SOLUTION", "table": plain,
                                                "witnesses": witnesses}), 7)


def test_parity_needs_even_q(cert_file):
    record = next(r for r in _records(cert_file) if r.table and r.params["q"] == "31")
    rows = [row.model_copy(update={"verdict": "PARITY_16"}) for row in record.table]
    with pytest.raises(CheckFailed):
        check_certificate(record.model_copy(update={
            "reason": "PARITY_16",
            "table": rows,
            "witnesses": {**record.witnesses, "val2_eq_product": "0"},
        }), 7)


def test_branch_record_rejects_non_decimal():
    with pytest.raises(ValueError):
        BranchRecord(a="01", numerator="1", denominator="1", group_order="1", verdict="SOLUTION")


def test_group_orders_are_recomputed():
    for g in catalog_entries(33) + [lookup("AGL1_8", 8), lookup("AGammaL1_8", 8), affine_sl(6), psl2_group(64, 2)]:
        assert _group_order(g) == g.order


def test_replay_does_not_trust_catalog_orders(monkeypatch):
    result = eliminate_degree(24)
    records = [certificate_record(cert) for cert in result.certificates
               if cert.reason in (Reason.STABILIZER_NOT_DIVISOR, Reason.B_EXCEEDS_GROUP_ORDER)]
    assert records
    monkeypatch.setattr(GroupSpec, "order", property(lambda self: 1))
    for record in records:
        check_certificate(record, 7)

