"""Acceptance criteria 1-10, run exactly as stated.

Each test records one PASS/FAIL line, printed in the terminal summary
(and directly when this file is run as a script).  Criterion 9 is known
to fail on the default corpus because two transfer claims are false as
printed; it is marked ``xfail(strict=True)`` so the suite stays green
while the failure remains visible.  See the decision ledger.
"""

import io
import time

import pytest

from wsprimary import claims as C
from wsprimary import oracle
from wsprimary.cli import run
from wsprimary.errors import NotDisjoint, NotProper
from wsprimary.modules import regular, submodule_span
from wsprimary.predicates import PredicateKind, check, clear_caches
from wsprimary.rings import mult_set_closure, zn

pytestmark = pytest.mark.slow


def _record(log, k, ok, note):
    log[k] = ("PASS" if ok else "FAIL", note)
    print(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {note}")


def _verify_all():
    clear_caches()
    out, err = io.StringIO(), io.StringIO()
    t0 = time.perf_counter()
    report, code = run(["verify", "--claims", "all", "--format", "json"], stdout=out, stderr=err)
    assert report is not None, err.getvalue()
    report["_elapsed"] = time.perf_counter() - t0
    report["_exit"] = code
    return report


@pytest.fixture(scope="module")
def runs():
    return _verify_all(), _verify_all()


@pytest.fixture(scope="module")
def by_id(runs):
    return {c["claim_id"]: c for c in runs[0]["claims"]}


def _all_pass(by_id, ids):
    bad = [(i, by_id[i]["status"], by_id[i]["violations"]) for i in ids if by_id[i]["status"] != "PASS"]
    checked = sum(by_id[i]["instances_checked"] for i in ids)
    return bad, checked


def test_criterion_01_oracle_equivalence(corpus, acceptance_log):
    t0 = time.perf_counter()
    insts = [i for i in corpus.base if i.M.order <= 16]
    mismatches = []
    for inst in insts:
        for kind in PredicateKind:
            try:
                v = check(kind, inst.N, inst.S)
                fast = (v.holds, v.witness)
            except NotDisjoint:
                fast = "NotDisjoint"
            except NotProper:
                fast = "NotProper"
            slow = oracle.naive_check(kind.value, inst.N.members, inst.M,
                                      inst.S.members if kind.uses_s else None)
            if fast != slow:
                mismatches.append((inst.describe(), kind.value, fast, slow))
    dt = time.perf_counter() - t0
    ok = not mismatches and dt < 120
    _record(acceptance_log, 1, ok,
            f"{len(insts)} instances x 7 kinds, {len(mismatches)} mismatches, {dt:.1f}s")
    assert ok, mismatches[:5]


def test_criterion_02_char_eq(by_id, acceptance_log):
    c = by_id["CHAR-EQ"]
    ok = c["status"] == "PASS" and c["elapsed"] < 600
    _record(acceptance_log, 2, ok, f"CHAR-EQ {c['status']} on {c['instances_checked']} "
            f"disjoint instances (rings <= 36)")
    assert ok


def test_criterion_03_fm(by_id, acceptance_log):
    c = by_id["FM"]
    ok = c["status"] == "PASS"
    _record(acceptance_log, 3, ok, f"FM {c['status']} on {c['instances_checked']} faithful "
            f"multiplication instances")
    assert ok


def test_criterion_04_im(by_id, acceptance_log):
    c = by_id["IM"]
    ok = c["status"] == "PASS"
    _record(acceptance_log, 4, ok, f"IM {c['status']} on {c['instances_checked']} instances")
    assert ok


def test_criterion_05_fixtures(by_id, corpus, acceptance_log):
    fx = corpus.fixtures
    notes = []
    # (a) Z36, N = (6), S = {3, 9, 27}
    M = regular(zn(36))
    S = mult_set_closure(M.ring, [3])
    va = check("weakly-s-primary", submodule_span(M, [6]), S)
    a = va.holds and va.witness is not None and S.members == (3, 9, 27)
    a = a and by_id["E1-4"]["status"] == "PASS"
    # (b) Z72, N n K = (36)
    d = fx["INT-CE-Z72"].data
    b = (d["NK"].members == (0, 36) and d["S"].members == (3, 9, 27)
         and check("weakly-s-primary", d["NK"], d["S"]).holds
         and not check("weakly-primary", d["NK"]).holds
         and by_id["INT-CE-Z72"]["status"] == "PASS")
    # (c) EX11 analogue: substitution allowed along the documented list, and recorded
    ex = by_id["EX11"]
    rec = ex["fixture"]
    c = ex["status"] == "PASS" and rec["validated"] and rec["candidates_tried"][0] == 12
    c = c and rec["substituted"] == (len(rec["candidates_tried"]) > 1)
    if rec["substituted"]:
        notes.append(f"EX11 substituted after {rec['candidates_tried'][:-1]} -> "
                     f"{rec['candidates_tried'][-1]}")
    # (d) Z90 analogue
    dd = fx["NM-CE"].data
    dn = (by_id["NM-CE"]["status"] == "PASS" and dd["M"].ring.order == 90
          and dd["residual"].members == tuple(range(0, 90, 10)))
    validated = all(f.validated for f in fx.values())
    ok = a and b and c and dn and validated
    _record(acceptance_log, 5, ok, f"(a)={a} (b)={b} (c)={c} (d)={dn} oracle-validated={validated}"
            + ("; " + "; ".join(notes) if notes else ""))
    assert ok


def test_criterion_06_sat(by_id, acceptance_log):
    c = by_id["SAT"]
    ok = c["status"] == "PASS" and c["instances_skipped_by_hypothesis"] == 0
    _record(acceptance_log, 6, ok, f"SAT {c['status']} on all {c['instances_checked']} instances")
    assert ok


def test_criterion_07_cart(by_id, corpus, acceptance_log):
    cart, cart3 = by_id["CART"], by_id["CART3"]
    factors_ok = all(M.order <= 8 for A, B, P in corpus.products for M in (A, B))
    ok = (cart["status"] == "PASS" and cart3["status"] == "PASS"
          and cart3["instances_checked"] >= 100 and factors_ok
          and cart["elapsed"] + cart3["elapsed"] < 600)
    _record(acceptance_log, 7, ok, f"CART {cart['status']} ({cart['instances_checked']} pairs), "
            f"CART3 {cart3['status']} ({cart3['instances_checked']} triples)")
    assert ok


FAMILY_8 = ["HA", "AMALG-1", "AMALG-2", "AMALG2-1", "AMALG2-2", "CA1-1", "CA1-2", "CA2-1",
            "CA2-2", "DUP", "DUP1", "DUP2", "DUP2-PRIMARY", "IDEAL", "IDEAL-RAD"]


def test_criterion_08_constructions(by_id, acceptance_log):
    bad, checked = _all_pass(by_id, FAMILY_8)
    elapsed = sum(by_id[i]["elapsed"] for i in FAMILY_8)
    ok = not bad and elapsed < 900
    _record(acceptance_log, 8, ok, f"{len(FAMILY_8)} claims, {checked} instances, "
            f"{elapsed:.1f}s, failing={bad}; DUP2 as printed={by_id['DUP2']['status']}, "
            f"primary variant={by_id['DUP2-PRIMARY']['status']}")
    assert ok


FAMILY_9 = ["HIER", "NM-1", "NM-2", "NM-3", "NM-4", "IS-1", "IS-2", "P1-1", "P1-2", "LOC-1",
            "LOC-2", "F-1", "F-2", "QUOT-1", "QUOT-2", "QUOT-3", "INT-1", "INT-2"]


@pytest.mark.xfail(strict=True, reason="F-2 and QUOT-2 are false as printed: the preimage "
                   "or intersection can have a residual meeting S (see decision ledger)")
def test_criterion_09_hierarchy_and_transfer(by_id, acceptance_log):
    vacuous = [i for i in FAMILY_9 if by_id[i]["status"] == "VACUOUS"]
    bad = [(i, by_id[i]["violations"]) for i in FAMILY_9 if by_id[i]["status"] == "FAIL"]
    ok = not bad and not vacuous
    _record(acceptance_log, 9, ok, f"failing={bad} vacuous={vacuous}; repaired variants "
            f"F-2-DISJOINT={by_id['F-2-DISJOINT']['status']} "
            f"QUOT-2-DISJOINT={by_id['QUOT-2-DISJOINT']['status']}")
    assert ok


def _strip(report):
    out = {k: v for k, v in report.items() if not k.startswith("_")}
    out["claims"] = [{k: v for k, v in c.items() if k != "elapsed"} for c in report["claims"]]
    return out


def test_criterion_10_determinism(runs, acceptance_log):
    a, b = runs
    ok = _strip(a) == _strip(b) and a["params_fingerprint"] == b["params_fingerprint"]
    _record(acceptance_log, 10, ok, f"two verify --claims all runs identical modulo timing "
            f"({a['_elapsed']:.0f}s, {b['_elapsed']:.0f}s, fingerprint "
            f"{a['params_fingerprint'][:12]})")
    assert ok


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-rA"]))
