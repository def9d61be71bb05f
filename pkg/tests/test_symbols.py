import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import (brute_order_in_quotient, nu_pair_by_definition, random_series,
                     random_two_local, tame1_by_definition, tame2_by_definition)
from tamerecip.gfield import gf
from tamerecip.laurent import TwoLocalElement
from tamerecip.symbols import (KummerError, is_unit_reduction_triple, kummer_galois_order,
                               kummer_generator_values, kummer_map, nu_pair, sign3, tame1, tame2)
from tamerecip.textparse import parse_series, parse_two_local

F5 = gf(5)
F9 = gf(3, 2)


def el(text, F=F5):
    return parse_two_local(text, F)


@pytest.mark.parametrize("args,value", [
    (("t", "u", "2"), 3),
    (("u", "t", "t"), 4),
    (("u", "t", "2"), 2),
])
def test_hand_values(args, value):
    assert tame2(*(el(a) for a in args)) == F5.element(value)


def test_nu_pair_and_sign_hand_values():
    assert nu_pair(el("t"), el("u")) == -1
    assert nu_pair(el("u"), el("t")) == 1
    assert sign3(el("u"), el("t"), el("t")) == F5.element(4)
    assert sign3(el("2"), el("3"), el("4")) == F5.one


def test_tame1_hand_values():
    u = parse_series("u", F5)
    assert tame1(u, u) == F5.element(4)
    assert tame1(u, parse_series("2", F5)) == F5.element(3)
    assert tame1(parse_series("1-u", F5), u) == F5.one


@pytest.mark.parametrize("F", [F5, F9], ids=["F5", "F9"])
def test_tame2_matches_definition(F):
    rng = random.Random(F.q)
    for _ in range(150):
        f, g, h = (random_two_local(F, rng) for _ in range(3))
        assert tame2(f, g, h) == tame2_by_definition(f, g, h)
        assert nu_pair(f, g) == nu_pair_by_definition(f, g)


@pytest.mark.parametrize("F", [F5, F9], ids=["F5", "F9"])
def test_tame1_matches_definition(F):
    rng = random.Random(F.q + 1)
    for _ in range(150):
        f, g = random_series(F, rng), random_series(F, rng)
        assert tame1(f, g) == tame1_by_definition(f, g)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([F5, F9]))
def test_trimultiplicative_and_antisymmetric(seed, F):
    rng = random.Random(seed)
    f, f2, g, h = (random_two_local(F, rng) for _ in range(4))
    s = lambda *a: tame2(*a).value
    assert s(f * f2, g, h) == s(f, g, h) * s(f2, g, h)
    assert s(g, f, h) == s(f, g, h).inverse()
    assert s(f, h, g) == s(f, g, h).inverse()
    assert s(h, g, f) == s(f, g, h).inverse()


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_nu_pair_biadditive(seed):
    rng = random.Random(seed)
    f, f2, g = (random_two_local(F5, rng) for _ in range(3))
    assert nu_pair(f * f2, g) == nu_pair(f, g) + nu_pair(f2, g)
    assert nu_pair(f, g) == -nu_pair(g, f)


def test_steinberg_on_samples():
    rng = random.Random(7)
    one = TwoLocalElement.constant(F5, 1)
    checked = 0
    while checked < 100:
        f = random_two_local(F5, rng)
        g = one - f
        if g.is_zero():
            continue
        h = random_two_local(F5, rng)
        assert tame2(f, g, h) == F5.one
        checked += 1


@pytest.mark.parametrize("m", [1, 2, 4])
@pytest.mark.parametrize("a", ["t", "u", "2", "u*t"])
def test_kummer_map(m, a):
    A = el(a)
    f, g = el("u + t"), el("2*t*u^-1")
    v = kummer_map(f, g, A, m)
    assert v == tame2(f, g, A).value ** (4 // m)
    assert v ** m == F5.one
    l = kummer_galois_order(A, m)
    assert l == brute_order_in_quotient(A.leading_data(), m, F5)
    gens = kummer_generator_values(A, m)
    assert max(x.order() for x in gens) == l


def test_kummer_rejects_bad_m():
    with pytest.raises(KummerError, match="3 does not divide 4"):
        kummer_map(el("u"), el("t"), el("2"), 3)


def test_unit_reduction_triple():
    assert is_unit_reduction_triple(el("1+u"), el("2+t"), el("3"))
    assert not is_unit_reduction_triple(el("u"), el("2"), el("3"))
    assert tame2(el("1+u"), el("2+t"), el("3")) == F5.one
