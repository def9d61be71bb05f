import random

import pytest

from oracles import random_series, random_two_local, tame1_by_definition
from tamerecip.gfield import gf
from tamerecip.graded import (GradedLine, OneTateLatticePair, StandardLattice, c2_det,
                              c2_det_diagonal, c3_det, determinant_line, gline_braid,
                              one_tate_commutator, one_tate_report, sigma1, window_matrix)
from tamerecip.laurent import LaurentSeries, PrecisionError
from tamerecip.symbols import nu_pair, tame2
from tamerecip.textparse import parse_series, parse_two_local

F5 = gf(5)
F9 = gf(3, 2)


def s(text, F=F5):
    return parse_series(text, F)


def test_graded_line_algebra():
    A = GradedLine(F5.element(2), 3)
    B = GradedLine(F5.element(3), -1)
    assert (A * B).grade == 2 and (A * B).scalar == F5.one
    assert (A * A.inverse()) == GradedLine.unit(F5)
    assert gline_braid(A, GradedLine(F5.one, 1)) == -F5.one
    with pytest.raises(ValueError):
        GradedLine(F5.zero, 0)


def test_window_matrix_entries():
    M = window_matrix(s("1 + 2*u"), 2)
    # column for u^-2 maps to u^-2 + 2u^-1
    assert [row[0] for row in M] == [1, 2, 0, 0]


def test_sigma1_simple_cases():
    assert sigma1(s("3"), s("u^2")) == F5.element(3) ** 2
    assert sigma1(s("3"), s("u^-1")) == F5.element(3).inverse()
    assert sigma1(s("u"), s("u")) == F5.one
    assert OneTateLatticePair(-2).dimension == 2


def test_standard_lattice_image():
    assert StandardLattice(1).image(parse_two_local("t^2*u", F5)) == StandardLattice(3)


@pytest.mark.parametrize("F", [F5, F9], ids=["F5", "F9"])
def test_one_tate_commutator_is_tame1(F):
    rng = random.Random(11 * F.q)
    for _ in range(100):
        f, g = random_series(F, rng), random_series(F, rng)
        rep = one_tate_report(f, g)
        assert rep.value == tame1_by_definition(f, g)
        assert rep.window <= 64


def test_one_tate_precision_exhaustion():
    vague = LaurentSeries(F5, 0, (1,), exact=False)
    with pytest.raises(PrecisionError):
        one_tate_commutator(vague, s("u^20"), window=8, cap=16)


@pytest.mark.parametrize("F", [F5, F9], ids=["F5", "F9"])
def test_c3_det_is_tame2_and_grade_law(F):
    rng = random.Random(13 * F.q)
    for _ in range(60):
        f, g, h = (random_two_local(F, rng) for _ in range(3))
        assert c3_det(f, g, h) == tame2(f, g, h).value
        assert c2_det(f, g).grade == -nu_pair(f, g)


def test_c2_diagonal_is_blockwise():
    rng = random.Random(3)
    fs = [random_two_local(F5, rng) for _ in range(3)]
    gs = [random_two_local(F5, rng) for _ in range(3)]
    line = c2_det_diagonal(fs, gs)
    assert line.grade == -sum(nu_pair(f, g) for f, g in zip(fs, gs))


def test_determinant_line_grade():
    assert determinant_line(s("2*u^3 + u^4")).grade == 3
