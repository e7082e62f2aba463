import pytest

from troprank import verify


def test_claim_ids_unique_and_cover_all_criteria():
    ids = [c.claim_id for c in verify.CLAIMS]
    assert len(ids) == len(set(ids))
    for n in range(1, 14):
        assert any(i.startswith(f"c{n:02d}-") for i in ids)
    assert {c.tag for c in verify.CLAIMS} <= {verify.PAPER, verify.DERIVED, verify.TRIVIAL}


def test_select_by_prefix():
    assert [c.claim_id for c in verify.select(["c02"])] == ["c02-fano7_sym-rank", "c02-fano7_sym-symrank"]
    assert len(verify.select(None)) == len(verify.CLAIMS)
    with pytest.raises(KeyError):
        verify.select(["nope"])


def test_property_suite_is_seeded():
    a = verify.property_suite(count=20, seed=5)
    assert a == verify.property_suite(count=20, seed=5)
    assert set(a) == set(verify.SUITE_CHECKS) and not any(a.values())


def test_report_json_excludes_timing_by_default():
    rep = verify.run_claim(verify.select(["c08-vardim-6-6-5"])[0])
    assert rep.passed
    assert "elapsed_s" not in rep.to_json()
    assert "elapsed_s" in rep.to_json(timings=True)
