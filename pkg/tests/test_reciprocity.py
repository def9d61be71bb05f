import itertools
import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import field, frobenius_norm, tame2_by_definition
from tamerecip.gfield import gf
from tamerecip.reciprocity import (SymbolReport, along_curve, around_point, flag_symbol,
                                   global_product, report_from_dict, steinberg_check,
                                   weil_on_curve)
from tamerecip.scenes import curve_scene, global_scene, point_scene
from tamerecip.surface import (ClosedPoint, Curve, RationalFunction, curves_through_point,
                               expand_at_flag, flags_at)

F5 = gf(5)
F7 = gf(7)


def rf(text, F=F5):
    return RationalFunction.parse(text, F)


def test_around_point_three_lines():
    rep = around_point(ClosedPoint.affine(F5, 0, 0), rf("x"), rf("y"), rf("x+y"))
    assert len(rep.entries) == 3
    assert rep.verdict and rep.product == F5.one


def test_around_point_constants_is_empty():
    rep = around_point(ClosedPoint.affine(F5, 0, 0), rf("2"), rf("3"), rf("4"))
    assert rep.entries == [] and rep.verdict


def test_around_node():
    rep = around_point(ClosedPoint.affine(F5, 0, 0), rf("x"), rf("y"), rf("y^2-x^2-x^3"))
    assert len(rep.entries) == 4
    assert rep.verdict


def test_along_line_examples():
    rep = along_curve(Curve.parse("y", F5), rf("x"), rf("x-1"), rf("y"))
    assert [e.ident.split(" in ")[0] for e in rep.entries] == ["(0,0)", "(1,0)", "(0:1:0)"]
    assert rep.verdict
    rep = along_curve(Curve.parse("y", F7), rf("x^2+1", F7), rf("x", F7), rf("y", F7))
    assert any(e.degree == 2 for e in rep.entries)
    assert rep.verdict


def test_along_curve_units_are_trivial():
    rep = along_curve(Curve.parse("y", F5), rf("2"), rf("3+y"), rf("1+y"))
    assert all(e.value == "1" for e in rep.entries)


def test_global_examples():
    assert global_product(rf("x"), rf("y"), rf("x+y")).verdict
    rep = global_product(rf("1"), rf("1"), rf("1"))
    assert rep.parts == [] and rep.verdict
    assert global_product(rf("x"), rf("x"), rf("x")).verdict


def test_per_flag_value_matches_series_definition():
    x = ClosedPoint.affine(F7, 1, 2)
    f, g, a = rf("x-1", F7), rf("(y-2)*(x+y)", F7), rf("x-y+1", F7)
    for flag in curves_through_point(x, [f, g, a]):
        exp = [expand_at_flag(h, flag) for h in (f, g, a)]
        assert flag_symbol(f, g, a, flag) == tame2_by_definition(*exp)


@pytest.mark.parametrize("name", ["F5", "F7", "F9"])
def test_random_points(name):
    F = field(name)
    rng = random.Random(101)
    for i in range(25):
        s = point_scene(F, rng, nodal=(i % 5 == 0 and F.p != 2))
        assert around_point(s.point, s.f, s.g, s.a).verdict


@pytest.mark.parametrize("name", ["F5", "F7", "F9"])
def test_random_curves_and_global(name):
    F = field(name)
    rng = random.Random(202)
    for _ in range(20):
        s = curve_scene(F, rng)
        assert along_curve(s.curve, s.f, s.g, s.a).verdict
    for _ in range(8):
        s = global_scene(F, rng)
        assert global_product(s.f, s.g, s.a).verdict


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_choice_independence_of_transversal(seed):
    rng = random.Random(seed)
    s = point_scene(F7, rng)
    a = around_point(s.point, s.f, s.g, s.a)
    b = around_point(s.point, s.f, s.g, s.a, prefer_swap=True)
    assert [(e.ident, e.value) for e in a.entries] == [(e.ident, e.value) for e in b.entries]


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_role_exchange_inverts_factors(seed):
    rng = random.Random(seed)
    s = point_scene(F5, rng)
    base = around_point(s.point, s.f, s.g, s.a)
    swapped = around_point(s.point, s.g, s.f, s.a)
    for e1, e2 in zip(base.entries, swapped.entries):
        assert F5.element(int(e1.value)) * F5.element(int(e2.value)) == F5.one
    assert base.verdict == swapped.verdict


def test_norms_in_report_are_frobenius_norms():
    rep = along_curve(Curve.parse("x^2+y^2-1", F7), rf("x", F7), rf("y-3", F7), rf("x+y", F7))
    assert rep.verdict
    assert any(e.degree == 2 for e in rep.entries)


def test_weil_examples():
    assert weil_on_curve(None, rf("x"), rf("x-1")).verdict
    rep = weil_on_curve(None, rf("3"), rf("x-2"))
    assert rep.verdict
    assert weil_on_curve(None, rf("x"), rf("x")).verdict


def test_weil_exhaustive_small_pairs():
    funcs = ["x", "x-1", "x-2", "2", "3"]
    for a, b in itertools.product(funcs, repeat=2):
        assert weil_on_curve(None, rf(a), rf(b)).verdict, (a, b)


def test_weil_on_conic_with_degree_two_points():
    C = Curve.parse("x^2 + y^2 - 1", F7)
    assert weil_on_curve(C, rf("x", F7), rf("y+2", F7)).verdict


def test_steinberg_examples():
    O = ClosedPoint.affine(F5, 0, 0)
    flag = flags_at(O, Curve.parse("y", F5))[0]
    assert steinberg_check(rf("x"), rf("y"), flag)
    assert steinberg_check(rf("2+y"), rf("x"), flag)
    assert steinberg_check(rf("x"), rf("-1"), flag, a=rf("y"))
    with pytest.raises(ValueError):
        steinberg_check(rf("1"), rf("y"), flag)


def test_report_serialization_roundtrip():
    rep = global_product(rf("x"), rf("y"), rf("x+y"))
    doc = json.loads(rep.to_json())
    assert report_from_dict(doc) == (str(rep.product), rep.verdict)
    assert "verdict = true" in rep.to_text()


def test_trivial_marker():
    rep = along_curve(Curve.parse("y", F5), rf("2"), rf("3+y"), rf("1+y"))
    assert rep.entries and all(e.trivial for e in rep.entries)
    assert "[trivial factor]" in rep.to_text()
    rep = around_point(ClosedPoint.affine(F5, 0, 0), rf("x"), rf("y"), rf("x+y"))
    assert not any(e.trivial for e in rep.entries)
