import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wsprimary import oracle
from wsprimary.errors import CapExceeded, EmptyGenerators, ImproperIdeal, InvalidSpec, MissingIdeal
from wsprimary.rings import (
    audit_ring,
    ideal_residual,
    ideal_span,
    make_ring,
    mult_set_closure,
    product,
    quotient,
    radical_of_ideal,
    saturate,
    special_subset,
    unit_ideal,
    zero_ideal,
    zn,
)


def test_zn_basic():
    R = zn(6)
    assert (R.order, R.zero, R.one) == (6, 0, 1)
    assert audit_ring(R) == []


def test_product_is_crt_copy_of_z6():
    P = product(zn(2), zn(3))
    Z6 = zn(6)
    # CRT bijection x -> (x mod 2, x mod 3); index of (a, b) is 3a + b
    phi = [(x % 2) * 3 + x % 3 for x in range(6)]
    for x in range(6):
        for y in range(6):
            assert P.add[phi[x], phi[y]] == phi[Z6.add[x, y]]
            assert P.mul[phi[x], phi[y]] == phi[Z6.mul[x, y]]


def test_quotient_z12_by_6():
    R = zn(12)
    Q = quotient(R, ideal_span(R, [6]))
    assert Q.order == 6
    assert audit_ring(Q) == []


@pytest.mark.parametrize("n,gens,expected", [
    (12, [4], (0, 4, 8)),
    (36, [6], (0, 6, 12, 18, 24, 30)),
    (12, [4, 6], (0, 2, 4, 6, 8, 10)),
    (12, [], (0,)),
])
def test_ideal_span(n, gens, expected):
    assert ideal_span(zn(n), gens).members == expected


def test_ideal_count_matches_divisors():
    for n in range(2, 40):
        assert len(zn(n).ideals) == sum(1 for d in range(1, n + 1) if n % d == 0)


def test_radical_examples():
    R = zn(12)
    assert radical_of_ideal(ideal_span(R, [4])).members == (0, 2, 4, 6, 8, 10)
    assert radical_of_ideal(unit_ideal(R)) == unit_ideal(R)
    R72 = zn(72)
    assert radical_of_ideal(ideal_span(R72, [36])).members == tuple(range(0, 72, 6))


@pytest.mark.parametrize("n", [8, 12, 18, 36, 72])
def test_radical_agrees_with_oracle_and_is_idempotent(n):
    R = zn(n)
    for I in R.ideals:
        rad = radical_of_ideal(I)
        assert set(rad.members) == oracle.naive_radical(R, set(I.members))
        assert radical_of_ideal(rad) == rad
        for J in R.ideals:
            if I <= J:
                assert rad <= radical_of_ideal(J)


def test_residual_examples():
    R = zn(12)
    assert ideal_residual(ideal_span(R, [6]), 2).members == (0, 3, 6, 9)
    I = ideal_span(R, [4])
    assert ideal_residual(I, 1) == I
    assert ideal_residual(zero_ideal(R), ideal_span(R, [6])).members == (0, 2, 4, 6, 8, 10)


@given(st.integers(2, 40), st.data())
@settings(max_examples=60, deadline=None)
def test_residual_contains_ideal(n, data):
    R = zn(n)
    I = data.draw(st.sampled_from(R.ideals))
    s = data.draw(st.integers(0, n - 1))
    assert I <= ideal_residual(I, s)


@pytest.mark.parametrize("n,gens,expected", [
    (36, [3], (3, 9, 27)),
    (6, [1], (1,)),
    (72, [3], (3, 9, 27)),
])
def test_mult_set_closure(n, gens, expected):
    assert mult_set_closure(zn(n), gens).members == expected


def test_mult_set_closure_errors_and_zero():
    with pytest.raises(EmptyGenerators):
        mult_set_closure(zn(6), [])
    S = mult_set_closure(zn(4), [2])
    assert S.contains_zero


@given(st.integers(2, 40), st.lists(st.integers(0, 200), min_size=1, max_size=3))
@settings(max_examples=80, deadline=None)
def test_mult_set_closure_is_least_fixpoint(n, gens):
    R = zn(n)
    gens = [g % n for g in gens]
    S = mult_set_closure(R, gens)
    mem = set(S.members)
    assert all((a * b) % n in mem for a in mem for b in mem)
    # least: every element is a product of generators
    reach, frontier = set(gens), set(gens)
    while frontier:
        frontier = {(a * g) % n for a in frontier for g in gens} - reach
        reach |= frontier
    assert reach == mem


def test_saturate_examples():
    R6 = zn(6)
    assert saturate(mult_set_closure(R6, [1])).members == (1, 5)
    R = zn(36)
    S = mult_set_closure(R, [3])
    expected = sorted({x for x in range(36) for y in range(36) if (x * y) % 36 in S.members})
    assert list(saturate(S).members) == expected
    assert saturate(saturate(S)) == saturate(S)
    assert S <= saturate(S)


def test_special_subsets():
    assert special_subset(zn(6), "units") == frozenset({1, 5})
    R = zn(12)
    assert sorted(special_subset(R, "zdiv_mod_ideal", zero_ideal(R))) == [0, 2, 3, 4, 6, 8, 9, 10]
    I = ideal_span(R, [4])
    oracle_set = {r for r in range(12) for s in range(12) if s % 4 and (r * s) % 12 % 4 == 0}
    assert set(special_subset(R, "zdiv_mod_ideal", I)) == oracle_set
    with pytest.raises(MissingIdeal):
        special_subset(R, "zdiv_mod_ideal")
    with pytest.raises(ImproperIdeal):
        special_subset(R, "zdiv_mod_ideal", unit_ideal(R))


def test_units_are_coprime_residues():
    for n in range(2, 30):
        assert zn(n).units == frozenset(x for x in range(n) if math.gcd(x, n) == 1)


def test_make_ring_recipes_and_errors():
    assert make_ring({"zn": 5}).order == 5
    assert make_ring({"product": [{"zn": 2}, {"zn": 4}]}).order == 8
    assert make_ring({"quotient": {"ring": {"zn": 12}, "gens": [4]}}).order == 4
    assert make_ring({"idealization": {"module": {"reduction": {"n": 4, "m": 2}}}}).order == 8
    with pytest.raises(InvalidSpec):
        make_ring({"zn": "x"})
    with pytest.raises(InvalidSpec):
        make_ring({"bogus": 1})
    with pytest.raises(CapExceeded):
        make_ring({"zn": 200})


def test_tables_are_frozen():
    R = zn(5)
    with pytest.raises(ValueError):
        R.add[0, 0] = 3
    assert isinstance(R.mul, np.ndarray)
