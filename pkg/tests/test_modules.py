import pytest
from hypothesis import given, settings, strategies as st

from wsprimary import oracle
from wsprimary.corpus import _cyclic_direct_sum
from wsprimary.errors import (
    ActionUndefined,
    ImageNotSubmodule,
    LatticeTooLarge,
    MethodInapplicable,
    NotAdditive,
    NotMultiplicationModule,
)
from wsprimary.modules import (
    Submodule,
    audit_module,
    direct_sum,
    enumerate_submodules,
    hom_transport,
    ideal_action,
    localize,
    m_radical,
    make_hom,
    make_module,
    module_properties,
    product,
    quotient,
    reduction,
    regular,
    residual_in_module,
    residual_in_ring,
    submodule_product,
    submodule_span,
    zero_module,
)
from wsprimary.rings import ideal_span, mult_set_closure, radical_mask, zero_ideal, zn


def test_regular_and_product_orders():
    assert regular(zn(12)).order == 12
    P = product(regular(zn(4)), regular(zn(9)))
    assert P.order == 36 and P.ring.order == 36
    assert audit_module(P) == []


def test_quotient_has_projection():
    M = regular(zn(12))
    Q, pi = quotient(M, submodule_span(M, [4]))
    assert Q.order == 4
    assert pi.is_surjective and pi.kernel.members == (0, 4, 8)


def test_span_examples():
    assert submodule_span(regular(zn(36)), [6]).members == tuple(range(0, 36, 6))
    assert submodule_span(regular(zn(12)), [4, 6]).members == (0, 2, 4, 6, 8, 10)
    V = direct_sum(regular(zn(2)), regular(zn(2)))
    assert len(submodule_span(V, [V.index("(1|0)")])) == 2


def test_lattice_counts():
    assert len(enumerate_submodules(regular(zn(12)))) == 6
    assert len(enumerate_submodules(zero_module(zn(2)))) == 1
    V = direct_sum(regular(zn(2)), regular(zn(2)))
    assert len(enumerate_submodules(V)) == 5


MODULE_RECIPES = [
    lambda: regular(zn(12)),
    lambda: regular(zn(16)),
    lambda: direct_sum(regular(zn(2)), regular(zn(2))),
    lambda: direct_sum(regular(zn(2)), regular(zn(2)), regular(zn(2))),
    lambda: _cyclic_direct_sum(8, 4, 2),
    lambda: _cyclic_direct_sum(4, 4, 4),
    lambda: reduction(12, 4),
    lambda: product(regular(zn(2)), regular(zn(4))),
]


@pytest.mark.parametrize("build", MODULE_RECIPES)
def test_lattice_matches_brute_force(build):
    M = build()
    assert [N.members for N in enumerate_submodules(M)] == oracle.brute_force_submodules(M)


def test_lattice_cap():
    M = _cyclic_direct_sum(2, 2, 2, 2, 2, 2, 2)
    with pytest.raises(LatticeTooLarge) as e:
        enumerate_submodules(M, cap=50)
    assert e.value.partial_count > 0


def test_reduction_requires_divisibility():
    with pytest.raises(ActionUndefined):
        reduction(12, 5)


def test_residual_in_ring_examples():
    M = regular(zn(12))
    assert residual_in_ring(submodule_span(M, [4])).members == (0, 4, 8)
    assert residual_in_ring(M.whole).members == tuple(range(12))
    D = _cyclic_direct_sum(90, 10, 10)
    assert residual_in_ring(D.zero_sub).members == tuple(range(0, 90, 10))


def test_residual_in_module_examples():
    D = _cyclic_direct_sum(12, 4, 6)
    C = residual_in_module(D.zero_sub, 2)
    expected = sorted(D.index(f"({a}|{b})") for a in (0, 2) for b in (0, 3))
    assert list(C.members) == expected
    N = submodule_span(D, [D.index("(2|0)")])
    assert residual_in_module(N, 1) == N
    assert residual_in_module(N, 0) == D.whole


@pytest.mark.parametrize("build", MODULE_RECIPES)
def test_residual_agrees_with_oracle(build):
    M = build()
    for N in M.submodules:
        assert set(residual_in_ring(N).members) == oracle.naive_residual(M, set(N.members))
        assert N <= residual_in_module(N, 3 % M.ring.order)
        assert ideal_action(residual_in_ring(N), M) <= N


def test_module_properties():
    pr = module_properties(regular(zn(12)))
    assert pr.faithful and pr.multiplication
    assert set(pr.zdivisors) == {0, 2, 3, 4, 6, 8, 9, 10}
    assert not module_properties(_cyclic_direct_sum(90, 10, 10)).faithful
    z = module_properties(zero_module(zn(2)))
    assert not z.faithful and z.multiplication


def test_multiplication_iff_every_n_is_residual_times_m():
    for build in MODULE_RECIPES:
        M = build()
        eq = all(ideal_action(residual_in_ring(N), M) == N for N in M.submodules)
        assert eq == M.properties.multiplication


def test_ideal_action_examples():
    R = zn(36)
    M = regular(R)
    assert ideal_action(ideal_span(R, [6]), M).members == tuple(range(0, 36, 6))
    assert ideal_action(zero_ideal(R), M).is_zero
    R12 = zn(12)
    Q, pi = quotient(regular(R12), submodule_span(regular(R12), [6]))
    img = ideal_action(ideal_span(R12, [2]), Q)
    assert img.members == tuple(sorted({int(pi(x)) for x in range(0, 12, 2)}))


def test_submodule_product():
    M = regular(zn(36))
    N = submodule_span(M, [6])
    assert submodule_product(N, N).is_zero
    assert submodule_product(N, M.whole) == N
    M72 = regular(zn(72))
    P = submodule_product(submodule_span(M72, [4]), submodule_span(M72, [9]), audit=True)
    assert P.members == (0, 36)
    with pytest.raises(NotMultiplicationModule):
        V = direct_sum(regular(zn(2)), regular(zn(2)))
        submodule_product(V.zero_sub, V.whole)


def test_m_radical():
    M = regular(zn(12))
    N = submodule_span(M, [4])
    assert m_radical(N, "definition") == m_radical(N, "mult_formula") == submodule_span(M, [2])
    assert m_radical(M.whole) == M.whole
    M36 = regular(zn(36))
    N6 = submodule_span(M36, [6])
    rad = radical_mask(M36.ring, residual_in_ring(N6).mask)
    assert m_radical(N6).members == tuple(i for i in range(36) if rad[i])
    with pytest.raises(MethodInapplicable):
        m_radical(direct_sum(regular(zn(2)), regular(zn(2))).zero_sub, "mult_formula")


def test_homs():
    M = regular(zn(12))
    ident = make_hom(M, M, list(range(12)))
    assert ident.is_injective and ident.is_surjective and ident.kernel.is_zero
    Q, pi = quotient(M, submodule_span(M, [6]))
    assert pi.is_surjective and pi.kernel.members == (0, 6)
    from wsprimary.rings import reduction_hom
    red = make_hom(M, regular(zn(4)), [x % 4 for x in range(12)], scalar_bridge=reduction_hom(12, 4))
    assert red.is_surjective
    assert hom_transport(pi, submodule_span(M, [6]), "image").is_zero
    assert hom_transport(pi, Q.zero_sub, "preimage").members == (0, 6)
    assert hom_transport(red, submodule_span(M, [4]), "image").is_zero
    with pytest.raises(NotAdditive):
        make_hom(M, M, [0] + [1] * 11)


def test_image_not_submodule():
    # diagonal Z2 -> Z2 x Z2: the image {(0|0),(1|1)} is not an ideal of the target
    from wsprimary.rings import make_ring_hom, product as ring_product
    R1, R2 = zn(2), ring_product(zn(2), zn(2))
    f = make_ring_hom(R1, R2, [R2.index("(0|0)"), R2.index("(1|1)")])
    A, B = regular(R1), regular(R2)
    h = make_hom(A, B, [B.index("(0|0)"), B.index("(1|1)")], scalar_bridge=f)
    with pytest.raises(ImageNotSubmodule):
        hom_transport(h, A.whole, "image")
    assert hom_transport(h, B.zero_sub, "preimage").is_zero


def test_localization_examples():
    R6 = zn(6)
    L = localize(R6, mult_set_closure(R6, [3]))
    assert L.ring.order == 2 == oracle.localization_class_count(R6, [3])
    M = regular(zn(12))
    assert localize(M, mult_set_closure(M.ring, [1])).module.order == 12
    assert localize(zn(12), mult_set_closure(zn(12), [5])).ring.order == 12


@given(st.sampled_from([4, 6, 8, 9, 10, 12, 18, 24, 36]), st.data())
@settings(max_examples=40, deadline=None)
def test_localization_matches_idempotent_oracle(n, data):
    R = zn(n)
    g = data.draw(st.integers(1, n - 1))
    S = mult_set_closure(R, [g])
    if S.contains_zero:
        return
    L = localize(regular(R), S)
    assert L.module.order == oracle.localization_class_count(R, S.members)


def test_make_module_recipes():
    assert make_module({"regular": {"zn": 6}}).order == 6
    assert make_module({"reduction": {"n": 12, "m": 4}}).order == 4
    Q, pi = make_module({"quotient": {"module": {"regular": {"zn": 12}}, "gens": [4]}})
    assert Q.order == 4
    assert make_module({"direct_sum": [{"regular": {"zn": 2}}, {"regular": {"zn": 2}}]}).order == 4
