import random

import pytest
from hypothesis import given, settings, strategies as st

from tamerecip.central_ext import (LiftedElement, MonomialMatrix, SymbolCocycle, canonical_pair,
                                   commutator_of_lifts, ext_inverse, ext_multiply,
                                   principal_twist, random_two_local, restriction_check,
                                   splitting_certificate)
from tamerecip.gfield import gf, norm_to_base
from tamerecip.laurent import TwoLocalElement
from tamerecip.surface import ClosedPoint, Curve, RationalFunction, flags_at
from tamerecip.symbols import tame2

F5 = gf(5)
F9 = gf(3, 2)


def rf(text, F=F5):
    return RationalFunction.parse(text, F)


def one(F):
    return TwoLocalElement.constant(F, F.one)


def random_monomial(F, rng, n):
    perm = list(range(n))
    rng.shuffle(perm)
    return MonomialMatrix(tuple(perm), tuple(random_two_local(F, rng) for _ in range(n)))


def test_identity_and_central_elements():
    c = SymbolCocycle(TwoLocalElement.u(F5))
    I = MonomialMatrix.identity(3, one(F5))
    g = random_monomial(F5, random.Random(1), 3)
    assert c(I, g) == F5.one and c(g, I) == F5.one
    z = LiftedElement(I, F5.element(3))
    A = LiftedElement(g, F5.element(2))
    assert ext_multiply(z, A, c).z == ext_multiply(A, z, c).z


def test_canonical_pair_commutator_hand_value():
    F = F5
    u, t = TwoLocalElement.u(F), TwoLocalElement.t(F)
    c = SymbolCocycle(TwoLocalElement.constant(F, F.element(2)))
    g1, g2 = canonical_pair(u, t, 2, one(F))
    # {u, t} with a = 2 is tame2(u, t, 2) = 2
    assert commutator_of_lifts(g1, g2, c) == F.element(2)


@pytest.mark.parametrize("F", [F5, F9], ids=["F5", "F9"])
def test_canonical_pair_commutator_is_symbol(F):
    rng = random.Random(17 * F.q)
    for _ in range(40):
        x, y, a = (random_two_local(F, rng) for _ in range(3))
        c = SymbolCocycle(a)
        g1, g2 = canonical_pair(x, y, rng.choice([2, 3]), one(F))
        assert commutator_of_lifts(g1, g2, c) == tame2(x, y, a).value


def test_commutator_at_flag_with_residue_extension():
    F7 = gf(7)
    C = Curve.parse("y", F7)
    from tamerecip.surface import closed_points_on_curve
    x2 = next(p for p in closed_points_on_curve(C, [rf("x^2+1", F7)]) if p.field.d == 2)
    flag = flags_at(x2, C)[0]
    c = SymbolCocycle.at_flag(rf("x^2+1", F7), flag)
    f, g = rf("y", F7), rf("x", F7)
    ef, eg = c.entry(f), c.entry(g)
    g1, g2 = canonical_pair(ef, eg, 2, one(flag.field))
    expected = norm_to_base(tame2(ef, eg, c.a).value, F7)
    assert commutator_of_lifts(g1, g2, c) == expected
    assert commutator_of_lifts(g1, g2, c).field == F7


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([2, 3, 4]))
def test_cocycle_identity(seed, n):
    rng = random.Random(seed)
    c = SymbolCocycle(random_two_local(F5, rng))
    g1, g2, g3 = (random_monomial(F5, rng, n) for _ in range(3))
    assert c(g1, g2) * c(g1 * g2, g3) == c(g1, g2 * g3) * c(g2, g3)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_lift_independence(seed):
    rng = random.Random(seed)
    F = F9
    x, y, a = (random_two_local(F, rng) for _ in range(3))
    c = SymbolCocycle(a)
    g1, g2 = canonical_pair(x, y, 3, one(F))
    base = commutator_of_lifts(g1, g2, c)
    z1, z2 = (F.element(rng.randrange(1, F.q)) for _ in range(2))
    assert commutator_of_lifts(g1, g2, c, z1, z2) == base


def test_inverse_of_lift():
    rng = random.Random(5)
    c = SymbolCocycle(random_two_local(F5, rng))
    A = LiftedElement(random_monomial(F5, rng, 3), F5.element(4))
    prod = ext_multiply(A, ext_inverse(A, c), c)
    assert prod.g.equals(MonomialMatrix.identity(3, one(F5)))
    assert prod.z == F5.one


def test_same_slot_commutator_is_trivial():
    rng = random.Random(9)
    x, a = random_two_local(F5, rng), random_two_local(F5, rng)
    d1 = MonomialMatrix.diagonal([x, one(F5)])
    d2 = MonomialMatrix.diagonal([x * x, one(F5)])
    assert commutator_of_lifts(d1, d2, SymbolCocycle(a)) == F5.one


def test_errors():
    c = SymbolCocycle(TwoLocalElement.u(F5))
    u, t = TwoLocalElement.u(F5), TwoLocalElement.t(F5)
    swap = MonomialMatrix((1, 0), (one(F5), one(F5)))
    with pytest.raises(ValueError, match="commuting"):
        commutator_of_lifts(swap, MonomialMatrix.diagonal([u, t]), c)
    with pytest.raises(ValueError, match="size mismatch"):
        c(MonomialMatrix.identity(2, one(F5)), MonomialMatrix.identity(3, one(F5)))
    with pytest.raises(ValueError):
        MonomialMatrix((0, 0), (u, t))
    with pytest.raises(ValueError):
        LiftedElement(swap, F5.zero)


@pytest.mark.parametrize("n,m", [(2, 2), (3, 2), (3, 3)])
def test_restriction(n, m):
    c = SymbolCocycle(TwoLocalElement.u(F5) + TwoLocalElement.t(F5))
    assert restriction_check(n, m, c)


def test_restriction_with_principal_twist():
    C = Curve.parse("y", F5)
    flag = flags_at(ClosedPoint.affine(F5, 0, 0), C)[0]
    a = rf("x + 2")
    c = SymbolCocycle.at_flag(a, flag)
    twisted = SymbolCocycle.at_flag(principal_twist(a, C), flag)
    pairs = [(TwoLocalElement.u(F5), TwoLocalElement.t(F5)),
             (TwoLocalElement.t(F5), TwoLocalElement.constant(F5, F5.element(2)))]
    assert restriction_check(3, 2, c, pairs, a_variant=twisted)


def test_splitting_certificates():
    P = lambda s: rf(s)
    rep = splitting_certificate("point", P("x+y"), point=ClosedPoint.affine(F5, 0, 0),
                                samples=[P("x"), P("y"), P("1+x")])
    assert rep.verdict and len(rep.parts) == 6
    rep = splitting_certificate("curve", P("x"), curve=Curve.parse("y", F5),
                                samples=[P("x"), P("x-1")])
    assert rep.verdict
    assert splitting_certificate("global", P("x+y"), samples=[P("x"), P("y")]).verdict
    assert splitting_certificate("scalar", P("x")).verdict
    with pytest.raises(ValueError):
        splitting_certificate("point", P("x"))
