import json

import pytest

from wsprimary import claims as C
from wsprimary.corpus import CorpusParams, InstanceCorpus
from wsprimary.errors import UnknownClaim

SPEC_IDS = """CHAR-EQ FM NM-1 NM-2 NM-3 NM-4 IM MAXIMAL IS-1 IS-2 EX11 P1-1 P1-2 LOC-1 LOC-2 SAT
F-1 F-2 QUOT-1 QUOT-2 QUOT-3 INT-1 INT-2 INT-CE-Z72 CART CART3 IDEAL HA AMALG-1 AMALG-2 CA1-1
CA1-2 AMALG2-1 AMALG2-2 CA2-1 CA2-2 DUP DUP1 DUP2 EX2 E1-2 E1-3 E1-4 NM-CE""".split()


@pytest.fixture(scope="module")
def small():
    return InstanceCorpus(CorpusParams(max_ring_order=8, amalg_max_order=32, triple_samples=20))


def test_registry_covers_named_claims():
    assert len(C.claims()) >= 38
    assert set(SPEC_IDS) <= set(C.REGISTRY)
    assert C.get_claim("CHAR-EQ").family == "base<=36"


def test_equivalence_claims_are_marked():
    for cid in ("CHAR-EQ", "NM-3", "IM", "CART", "DUP", "AMALG-1", "AMALG2-1", "SAT"):
        assert C.get_claim(cid).style == "equivalence"


def test_unknown_claim():
    with pytest.raises(UnknownClaim):
        C.verify(["NOPE"], InstanceCorpus(CorpusParams(max_ring_order=4)))
    with pytest.raises(UnknownClaim):
        C.resolve_claim_ids("CHAR-EQ,NOPE")


def test_fixture_claims(corpus):
    (e14,) = C.verify(["E1-4"], corpus)
    assert e14.holds and e14.status == "PASS" and e14.instances_checked == 1
    (ice,) = C.verify(["INT-CE-Z72"], corpus)
    assert ice.holds and ice.fixture["validated"]


def test_hypothesis_accounting_and_report_invariants(small):
    for r in C.verify("all", small):
        assert r.instances_checked + r.instances_skipped_by_hypothesis == r.corpus_size
        assert r.holds == (not r.counterexamples)
        assert len(r.counterexamples) <= C.MAX_COUNTEREXAMPLES
        assert r.replay_mismatches == 0
        assert r.status in ("PASS", "FAIL", "VACUOUS")
        if r.status == "VACUOUS":
            assert r.instances_checked == 0 and r.holds
        json.dumps(r.to_dict())


def test_naive_backend_agrees_on_small_corpus(small):
    for cid in ("HIER", "SAT", "NM-2", "IS-1", "F-1", "QUOT-1", "QUOT-3", "CA1-2", "DUP2-PRIMARY"):
        c = C.get_claim(cid)
        for inst in C.family(small, c.family)[:400]:
            assert c.evaluate(C.FAST, inst) == c.evaluate(C.NAIVE, inst), (cid, inst)


def test_f2_counterexample_is_the_whole_preimage(small):
    (r,) = C.verify(["F-2"], small)
    assert r.status == "FAIL"
    cx = r.counterexamples[0]
    assert cx["replayed"] and cx["detail"]["disjoint"] is False
    (fixed,) = C.verify(["F-2-DISJOINT"], small)
    assert fixed.status == "PASS"


def test_vacuous_is_flagged():
    corpus = InstanceCorpus(CorpusParams(ring_orders=(2,), extra_rings=False))
    (r,) = C.verify(["P1-2"], corpus)
    assert r.instances_checked > 0 or r.status == "VACUOUS"


def test_reports_are_sorted_and_deterministic(small):
    a = [r.to_dict(timing=False) for r in C.verify(["SAT", "HIER", "E1-4"], small)]
    b = [r.to_dict(timing=False) for r in C.verify(["E1-4", "SAT", "HIER"], small)]
    assert a == b and [x["claim_id"] for x in a] == ["E1-4", "HIER", "SAT"]
