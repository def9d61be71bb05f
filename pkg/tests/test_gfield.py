import pytest
from hypothesis import given, settings, strategies as st

from oracles import frobenius_norm
from tamerecip.gfield import (FieldError, FiniteField, element_order, field_of_order, gf,
                              is_irreducible_mod_p, norm_to_base, roots_of_unity)

FIELDS = [gf(2), gf(5), gf(7), gf(2, 3), gf(3, 2), gf(5, 2), gf(7, 2)]


def codes(F):
    return st.integers(0, F.q - 1)


@pytest.mark.parametrize("F", FIELDS, ids=lambda F: f"F{F.q}")
def test_field_axioms(F):
    @settings(max_examples=60, deadline=None)
    @given(codes(F), codes(F), codes(F))
    def check(a, b, c):
        assert F.add(a, F.add(b, c)) == F.add(F.add(a, b), c)
        assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
    check()


@pytest.mark.parametrize("F", FIELDS, ids=lambda F: f"F{F.q}")
def test_generator_is_primitive(F):
    assert F.generator().order() == F.q - 1
    assert len(F.units()) == F.q - 1


def test_default_modulus_irreducible():
    for p, d in [(2, 4), (3, 3), (5, 2), (7, 2)]:
        F = gf(p, d)
        assert is_irreducible_mod_p(F.modulus, p)


def test_embedding_is_homomorphism():
    k, E = gf(5), gf(5, 2)
    emb = k.embedding(E)
    for a in k.elements():
        for b in k.elements():
            assert emb(a * b) == emb(a) * emb(b)
            assert emb(a + b) == emb(a) + emb(b)
            assert emb.preimage(emb(a)) == a


def test_subfield_embedding_f4_in_f16():
    emb = gf(2, 2).embedding(gf(2, 4))
    z = gf(2, 2).z
    assert emb(z) ** 3 == gf(2, 4).one


@pytest.mark.parametrize("p,d", [(5, 2), (7, 2), (3, 2), (2, 3)])
def test_norm_matches_frobenius_product(p, d):
    base, E = gf(p), gf(p, d)
    for e in E.units():
        assert norm_to_base(e, base) == frobenius_norm(e, base)


def test_norm_is_multiplicative_and_surjective():
    base, E = gf(7), gf(7, 2)
    norms = {norm_to_base(e, base).code for e in E.units()}
    assert norms == set(range(1, 7))


def test_roots_of_unity():
    F = gf(5)
    assert sorted(r.code for r in roots_of_unity(F, 4)) == [1, 2, 3, 4]
    with pytest.raises(FieldError):
        roots_of_unity(F, 3)


def test_element_order_and_frobenius():
    E = gf(3, 2)
    for e in E.units():
        assert (e ** element_order(e)) == E.one
        assert e.frobenius(2) == e


def test_field_of_order_rejects_non_prime_power():
    with pytest.raises(FieldError):
        field_of_order(6)


def test_format_uses_generator():
    F = gf(3, 2)
    assert str(F.z) == "z"
    assert str(F.element(F.from_int(2))) == "2"


def test_from_coefficient_list():
    F = gf(5, 2)
    assert F([1, 2]) == F.element(1) + F.z * 2
