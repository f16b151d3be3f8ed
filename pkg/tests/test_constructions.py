import numpy as np
import pytest

from wsprimary.constructions import (
    amalg_multset,
    amalg_submodule,
    dup_bar,
    dup_join,
    dup_multset_bar,
    dup_multset_join,
    embedded_module,
    homog_ideal,
    idealization_multset,
    idealize,
    lemma_ha_probe,
    make_amalgamation,
    make_amalgamation_from_recipe,
    make_duplication,
    radical_identity_holds,
)
from wsprimary.errors import EmptySet, EpimorphismRequired, NotHomogeneous, NotLinear, NotRingHom
from wsprimary.modules import make_hom, reduction, regular, submodule_span, zero_module
from wsprimary.rings import (
    audit_ring,
    ideal_span,
    make_ring_hom,
    mult_set_closure,
    product as ring_product,
    radical_of_ideal,
    reduction_hom,
    unit_ideal,
    zero_ideal,
    zn,
)


def test_idealization_orders():
    Z4 = zn(4)
    T = idealize(Z4, reduction(4, 2))
    assert T.order == 8 and audit_ring(T) == []
    assert idealize(zn(6), zero_module(zn(6))).order == 6


def test_z2_idealization_square_zero():
    R = zn(2)
    T = idealize(R, regular(R))
    x = T.index("(0|1)")
    assert T.mul[x, x] == T.zero


@pytest.mark.parametrize("n,m", [(4, 2), (8, 4), (9, 3), (6, 6)])
def test_embedded_module_squares_to_zero(n, m):
    R = zn(n)
    M = reduction(n, m)
    E = embedded_module(R, M)
    T = E.ring
    assert all(T.mul[a, b] == T.zero for a in E.members for b in E.members)


def test_homogeneous_ideals():
    Z4 = zn(4)
    M = reduction(4, 2)
    I = ideal_span(Z4, [2])
    H = homog_ideal(I, M.whole)
    assert len(H) == 4
    assert radical_of_ideal(H) == homog_ideal(radical_of_ideal(I), M.whole)
    assert radical_identity_holds(I, M.whole)
    assert len(homog_ideal(I, M.zero_sub)) == 2  # 2 * Z2 = 0, so this one is homogeneous
    with pytest.raises(NotHomogeneous):
        homog_ideal(unit_ideal(Z4), M.zero_sub)
    Z = homog_ideal(zero_ideal(Z4), M.zero_sub)
    assert len(Z) == 1 and radical_identity_holds(zero_ideal(Z4), M.zero_sub)


def test_idealization_multsets():
    Z36 = zn(36)
    M36 = reduction(36, 2)  # keeps Z36 x M under the ring cap
    S = idealization_multset(mult_set_closure(Z36, [1]), M36.zero_sub)
    assert [S.ring.labels[x] for x in S.members] == ["(1|0)"]
    S3 = idealization_multset(mult_set_closure(Z36, [3]), M36.zero_sub)
    assert [S3.ring.labels[x] for x in S3.members] == ["(3|0)", "(9|0)", "(27|0)"]
    Z4 = zn(4)
    M = reduction(4, 2)
    S4 = idealization_multset(mult_set_closure(Z4, [1, 3]), M.whole)
    assert sorted(S4.ring.labels[x] for x in S4.members) == ["(1|0)", "(1|1)", "(3|0)", "(3|1)"]


def test_duplication_z12():
    R = zn(12)
    M = regular(R)
    ctx = make_duplication(M, ideal_span(R, [2]))
    assert ctx.module.order == 72 and ctx.ring.order == 72
    assert ctx.is_duplication
    assert all((a - b) % 2 == 0 for a, b in ctx.module_pairs)
    N = submodule_span(M, [6])
    S = mult_set_closure(R, [1])
    assert amalg_submodule(ctx, "first", N) == dup_join(ctx, N)
    assert amalg_submodule(ctx, "second", N) == dup_bar(ctx, N)
    assert amalg_multset(ctx, "first", S) == dup_multset_join(ctx, S)
    assert amalg_multset(ctx, "second", S) == dup_multset_bar(ctx, S)
    assert amalg_submodule(ctx, "first", M.whole) == ctx.module.whole
    assert amalg_submodule(ctx, "second", M.whole) == ctx.module.whole
    labels = {ctx.ring.labels[x] for x in dup_multset_join(ctx, S).members}
    assert labels == {f"(1|{(1 + 2 * k) % 12})" for k in range(6)}


def test_zero_j_collapses_to_first_factor():
    R = zn(6)
    ctx = make_duplication(regular(R), zero_ideal(R))
    assert ctx.module.order == 6
    S = mult_set_closure(R, [5])
    assert len(amalg_multset(ctx, "first", S)) == len(S)


def test_mixed_ring_context():
    ctx = make_amalgamation_from_recipe({"R1": {"zn": 12}, "R2": {"zn": 4}, "f": "reduction",
                                         "J": [2], "phi": "reduction"})
    assert ctx.ring.order == 24 and ctx.module.order == 24
    for N1 in ctx.M1.submodules:
        assert lemma_ha_probe(ctx, N1=N1).passed
    S2 = mult_set_closure(ctx.R2, sorted(ctx.R2.units))
    assert len(amalg_multset(ctx, "second", S2)) > 0


def test_ha_on_duplication_both_parts():
    R = zn(12)
    ctx = make_duplication(regular(R), ideal_span(R, [4]))
    for N in ctx.M1.submodules:
        p = lemma_ha_probe(ctx, N1=N, N2=N)
        assert p.passed and p.part1_forward and p.part2_backward


def test_ha_requires_epimorphisms():
    R1, R2 = zn(2), ring_product(zn(2), zn(2))
    f = make_ring_hom(R1, R2, [R2.index("(0|0)"), R2.index("(1|1)")])
    M1, M2 = regular(R1), regular(R2)
    phi = make_hom(M1, M2, [M2.index("(0|0)"), M2.index("(1|1)")], scalar_bridge=f)
    ctx = make_amalgamation(R1, R2, f, zero_ideal(R2), M1, M2, phi)
    with pytest.raises(EpimorphismRequired):
        lemma_ha_probe(ctx, N2=M2.zero_sub)
    with pytest.raises(EmptySet):
        amalg_multset(ctx, "second", mult_set_closure(R2, [R2.index("(1|0)")]))


def test_bad_contexts():
    with pytest.raises(NotRingHom):
        make_ring_hom(zn(4), zn(2), [0, 0, 0, 0])
    # reduction Z4 -> Z2 is additive, but without a scalar bridge the rings differ
    with pytest.raises(NotLinear):
        make_hom(regular(zn(4)), regular(zn(2)), [0, 1, 0, 1])
    assert make_hom(regular(zn(4)), regular(zn(2)), [0, 1, 0, 1],
                    scalar_bridge=reduction_hom(4, 2)).is_surjective
