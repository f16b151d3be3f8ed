import pytest
from hypothesis import given, settings, strategies as st

from wsprimary import oracle
from wsprimary.corpus import _cyclic_direct_sum
from wsprimary.errors import FmHypothesisUnmet, MissingMultSet, NotDisjoint, NotProper, NotWeaklySPrimary
from wsprimary.modules import direct_sum, regular, submodule_span
from wsprimary.predicates import (
    PredicateKind,
    char_conditions,
    check,
    clear_caches,
    holds,
    is_maximal_weakly_s_primary,
    weakly_s_elements,
)
from wsprimary.rings import mult_set_closure, zn


def _z(n, g):
    M = regular(zn(n))
    return M, submodule_span(M, [g])


def test_z36_weakly_s_primary_witness_3():
    M, N = _z(36, 6)
    v = check("weakly-s-primary", N, mult_set_closure(M.ring, [3]))
    assert v.holds and v.witness == 3 and v.disjointness_checked


def test_zero_submodule_is_weakly_s_primary_when_disjoint():
    M = regular(zn(12))
    assert check("weakly-s-primary", M.zero_sub, mult_set_closure(M.ring, [5])).holds


def test_z12_weakly_primary_counterexample():
    M, N = _z(12, 6)
    v = check("weakly-primary", N)
    assert not v.holds and v.counterexample == (2, 3)
    assert oracle.defeats("weakly-primary", N.members, M, 1, 2, 3)


def test_z72_witness_9():
    M, N = _z(72, 36)
    S = mult_set_closure(M.ring, [3])
    v = check("weakly-s-primary", N, S)
    assert v.holds and v.witness == 9
    assert oracle.defeats("weakly-s-primary", N.members, M, 3, 9, 4)
    assert weakly_s_elements(N, S) == frozenset({9, 27})


def test_weakly_s_elements_edge_cases():
    M = regular(zn(12))
    S = mult_set_closure(M.ring, [5])
    assert weakly_s_elements(M.zero_sub, S) == frozenset(S.members)
    _, N = _z(12, 6)
    assert weakly_s_elements(N, mult_set_closure(M.ring, [1])) == frozenset()


def test_errors():
    M, N = _z(12, 4)
    with pytest.raises(NotDisjoint):
        check("weakly-s-primary", N, mult_set_closure(M.ring, [4]))
    with pytest.raises(NotProper):
        check("primary", M.whole)
    with pytest.raises(MissingMultSet):
        check("s-primary", N)
    assert holds("weakly-s-primary", N, mult_set_closure(M.ring, [4])) is False


def test_kind_parsing():
    assert PredicateKind.parse("W_S_PRIMARY") is PredicateKind.W_S_PRIMARY
    assert PredicateKind.parse("weakly-s-primary") is PredicateKind.W_S_PRIMARY
    assert PredicateKind.W_S_PRIMARY.uses_s and PredicateKind.W_S_PRIMARY.weak


def test_counterexample_selection_rule():
    # least (a, m) among pairs defeating the most candidates
    M, N = _z(72, 36)
    S = mult_set_closure(M.ring, [3])
    v = check("s-primary", N, S)
    if not v.holds:
        counts = {}
        for s in S.members:
            for a in range(72):
                for m in range(72):
                    if oracle.defeats("s-primary", N.members, M, s, a, m):
                        counts[(a, m)] = counts.get((a, m), 0) + 1
        best = max(counts.values())
        assert v.counterexample == min(k for k, c in counts.items() if c == best)


KINDS = [k.value for k in PredicateKind]


def _agree(kind, N, S):
    try:
        fast = check(kind, N, S)
        fast = (fast.holds, fast.witness)
    except NotDisjoint:
        fast = "NotDisjoint"
    except NotProper:
        fast = "NotProper"
    slow = oracle.naive_check(kind, N.members, N.module, S.members if PredicateKind.parse(kind).uses_s else None)
    assert fast == slow, (kind, N, S)


@given(st.integers(2, 48), st.data())
@settings(max_examples=150, deadline=None)
def test_check_agrees_with_oracle_on_cyclic(n, data):
    M = regular(zn(n))
    N = data.draw(st.sampled_from(M.submodules))
    gens = data.draw(st.lists(st.integers(0, n - 1), min_size=1, max_size=2))
    S = mult_set_closure(M.ring, gens)
    for kind in KINDS:
        _agree(kind, N, S)


NONCYCLIC = [
    lambda: direct_sum(regular(zn(2)), regular(zn(2))),
    lambda: _cyclic_direct_sum(4, 4, 2),
    lambda: _cyclic_direct_sum(12, 4, 6),
    lambda: _cyclic_direct_sum(8, 8, 2),
]


@pytest.mark.parametrize("build", NONCYCLIC)
def test_check_agrees_with_oracle_on_sums(build):
    M = build()
    for N in M.submodules:
        for g in range(M.ring.order):
            S = mult_set_closure(M.ring, [g])
            for kind in KINDS:
                _agree(kind, N, S)


@given(st.integers(2, 36), st.data())
@settings(max_examples=80, deadline=None)
def test_verdicts_are_deterministic(n, data):
    M = regular(zn(n))
    N = data.draw(st.sampled_from(M.submodules))
    S = mult_set_closure(M.ring, [data.draw(st.integers(1, n - 1))])
    try:
        a = check("weakly-s-primary", N, S)
    except NotDisjoint:
        return
    clear_caches()
    b = check("weakly-s-primary", N, S)
    assert a.to_dict() == b.to_dict()


def test_unit_multset_collapses_to_weakly_primary():
    for n in (12, 18, 36):
        M = regular(zn(n))
        U = mult_set_closure(M.ring, sorted(M.ring.units))
        for N in M.submodules:
            if N.is_proper:
                assert holds("weakly-s-primary", N, U) == holds("weakly-primary", N)


def test_char_conditions():
    M, N = _z(36, 6)
    S = mult_set_closure(M.ring, [3])
    c = char_conditions(N, S, fm=True)
    assert c.c2 and c.c3 and c.c4 and c.c5 and c.fm
    z = char_conditions(M.zero_sub, S, fm=True)
    assert z.c2 and z.c3 and z.c4 and z.c5 and z.fm
    V = direct_sum(regular(zn(2)), regular(zn(2)))
    with pytest.raises(FmHypothesisUnmet):
        char_conditions(V.zero_sub, mult_set_closure(V.ring, [1]), fm=True)
    with pytest.raises(NotDisjoint):
        char_conditions(N, mult_set_closure(M.ring, [6]))


def test_maximal_in_z36():
    M = regular(zn(36))
    S = mult_set_closure(M.ring, [3])
    wsp = [N for N in M.submodules if holds("weakly-s-primary", N, S)]
    maximal = [N for N in wsp if is_maximal_weakly_s_primary(N, S)]
    assert [N.members for N in maximal] == [tuple(range(0, 36, 2))]
    assert not is_maximal_weakly_s_primary(submodule_span(M, [6]), S)
    with pytest.raises(NotWeaklySPrimary):
        is_maximal_weakly_s_primary(submodule_span(M, [6]), mult_set_closure(M.ring, [1]))
