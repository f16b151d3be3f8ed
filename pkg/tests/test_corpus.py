from wsprimary import oracle
from wsprimary.corpus import CorpusParams, InstanceCorpus, corpus_generate


def _key(inst):
    return (inst.M.id, inst.N.members, inst.S.members)


def test_small_params_include_z4_with_three_submodules():
    c = corpus_generate(CorpusParams(ring_orders=(4,), extra_rings=False))
    regs = [M for M in c.modules if M.id == "Z4"]
    assert regs and len(regs[0].submodules) == 3


def test_generation_is_deterministic():
    p = CorpusParams(max_ring_order=12)
    a, b = InstanceCorpus(p), InstanceCorpus(p)
    assert [_key(i) for i in a.base] == [_key(i) for i in b.base]
    assert a.fingerprint == b.fingerprint
    assert a.fingerprint != InstanceCorpus(CorpusParams(max_ring_order=10)).fingerprint


def test_fixtures_are_validated_and_always_present():
    c = InstanceCorpus(CorpusParams(max_ring_order=6))
    fx = c.fixtures
    assert set(fx) >= {"E1-1", "E1-2", "E1-3", "E1-4", "INT-CE-Z72", "EX11", "NM-CE", "QUOT-CE", "EX2"}
    assert all(f.validated for f in fx.values())
    # the ring-order filter trims the base corpus, never the fixtures
    assert "Z72" not in {M.id for M in c.modules}
    assert {M.id for M in InstanceCorpus().modules} >= {"Z72", "Z36"}
    from wsprimary.claims import verify
    (r,) = verify(["INT-CE-Z72"], c)
    assert r.status == "PASS"


def test_int_ce_fixture_shape():
    f = InstanceCorpus().fixtures["INT-CE-Z72"]
    d = f.data
    assert d["M"].order == 72 and d["S"].members == (3, 9, 27)
    assert d["NK"].members == (0, 36)
    assert oracle.naive_check("weakly-s-primary", d["NK"].members, d["M"], d["S"].members) == (True, 9)
    assert oracle.naive_check("weakly-primary", d["NK"].members, d["M"])[0] is False
    assert not f.substituted


def test_ex11_substitution_is_recorded():
    f = InstanceCorpus().fixtures["EX11"]
    assert f.validated and f.candidates_tried[0] == 12
    assert f.record()["substituted"] == (len(f.candidates_tried) > 1)


def test_every_module_passes_audit(corpus):
    from wsprimary.modules import audit_module
    assert all(audit_module(M) == [] for M in corpus.modules if M.order <= 36)


def test_default_sizes(corpus):
    s = corpus.summary()
    assert s["products"] > 0 and s["triples"] >= 100 and s["amalgamations"] > 0
    assert all(M.ring.order <= 8 for A, B, P in corpus.products for M in (A, B))
