import random
from fractions import Fraction

import pytest

from services.errors import (
    CoincidentPointsError,
    EmptyImageError,
    HadamardUndefinedError,
    UnsupportedCurveError,
)
from services.multipoly import MultiPoly
from services.projgeom import (
    DiagonalAuto,
    LineP3,
    ParamCurve,
    ProjPoint,
    binary_gcd_degree,
    conic_through,
    hadamard_point,
    line_from_points,
    plane_contains,
    pluecker_relation,
    point_star_line,
    share_common_factor,
    torus_act,
    xl_membership,
)
from utils.fixtures import generic_line, random_line, random_point

S, T = MultiPoly.var(2, 0), MultiPoly.var(2, 1)


def test_point_canonical_form():
    p = ProjPoint.of(0, -2, 4, 6)
    assert p == ProjPoint.of(0, 1, -2, -3)
    assert str(p) == "(0:1:-2:-3)"
    assert ProjPoint.of(Fraction(1, 2), 1, 0, 0) == ProjPoint.of(1, 2, 0, 0)
    assert p.zero_slots() == {0}


def test_point_rejects_zero():
    with pytest.raises(ValueError):
        ProjPoint.of(0, 0, 0, 0)


def test_hadamard_point():
    assert hadamard_point(ProjPoint.of(1, 2, 3, 4), ProjPoint.of(2, 1, 1, 1)) == ProjPoint.of(2, 2, 3, 4)
    with pytest.raises(HadamardUndefinedError):
        hadamard_point(ProjPoint.coordinate(0), ProjPoint.coordinate(1))


def test_pluecker_roundtrip():
    rng = random.Random(10)
    for _ in range(20):
        line = random_line(rng)
        assert pluecker_relation(line.pluecker) == 0
        assert LineP3.from_pluecker(line.pluecker) == line
        a, b = line.points()
        assert line.contains(a) and line.contains(b)


def test_pluecker_rejects_invalid():
    with pytest.raises(ValueError):
        LineP3.from_pluecker([1, 0, 0, 0, 0, 1])
    with pytest.raises(ValueError):
        LineP3.from_pluecker([0] * 6)


def test_coincident_points():
    with pytest.raises(CoincidentPointsError):
        line_from_points(ProjPoint.of(1, 2, 3, 4), ProjPoint.of(2, 4, 6, 8))
    with pytest.raises(CoincidentPointsError):
        LineP3.from_span([[1, 2, 3, 4], [2, 4, 6, 8]])


def test_meet_plane():
    rng = random.Random(11)
    line = generic_line(rng)
    for i in range(4):
        p = line.meet_plane(i)
        assert p[i] == 0
        assert line.contains(p)
    inside = line_from_points(ProjPoint.of(0, 1, 2, 3), ProjPoint.of(0, 1, 0, 0))
    assert inside.in_coordinate_plane() == 0
    with pytest.raises(ValueError):
        inside.meet_plane(0)


def test_point_star_line_cases():
    line = line_from_points(ProjPoint.of(1, 1, 0, 2), ProjPoint.of(1, 0, 1, 1))
    image = point_star_line(ProjPoint.of(2, 3, 5, 7), line)
    assert isinstance(image, LineP3)
    assert image.contains(ProjPoint.of(2, 3, 0, 14))
    assert point_star_line(ProjPoint.coordinate(0), line) == ProjPoint.coordinate(0)
    in_h0 = line_from_points(ProjPoint.of(0, 1, 2, 3), ProjPoint.of(0, 1, 0, 0))
    with pytest.raises(EmptyImageError):
        point_star_line(ProjPoint.coordinate(0), in_h0)


def test_xl_membership():
    rng = random.Random(12)
    line = generic_line(rng)
    for _ in range(10):
        image = point_star_line(random_point(rng, nonzero_entries=True), line)
        assert xl_membership(line, image)
    assert not all(xl_membership(line, random_line(rng)) for _ in range(10))


def test_param_curve_validation():
    with pytest.raises(UnsupportedCurveError):
        ParamCurve(3, (S ** 3, T ** 3, S * T * T, S * S * T))
    with pytest.raises(UnsupportedCurveError):
        ParamCurve.conic([1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 0])
    with pytest.raises(UnsupportedCurveError):
        ParamCurve(1, (S, S.scale(2), S, S))


def test_conic_plane_and_point():
    rng = random.Random(13)
    point = ProjPoint.of(0, 1, 1, 1)
    conic = conic_through(point, rng)
    assert ProjPoint(conic.point_at(1, 0)) == point
    plane = conic.plane()
    for s, t in ((1, 0), (0, 1), (2, 3)):
        assert sum(c * x for c, x in zip(plane, conic.point_at(s, t))) == 0


def test_torus_action_commutes_with_lines():
    rng = random.Random(14)
    line = random_line(rng)
    psi = DiagonalAuto.sample(rng)
    assert torus_act(psi, ParamCurve.from_line(line)).base_line() == torus_act(psi, line)
    assert psi.compose(psi.inverse()) == DiagonalAuto.identity()


def test_binary_gcd():
    assert binary_gcd_degree([S * T, S * S]) == 1
    assert binary_gcd_degree([S, T]) == 0
    assert binary_gcd_degree([T * T, S * T * T]) == 2
    assert binary_gcd_degree([MultiPoly.zero(2)]) is None
    assert share_common_factor([])
    assert share_common_factor([S + T, (S + T) * S])
    assert not share_common_factor([S + T, S - T])


def test_plane_contains():
    assert plane_contains([[1, 0, 0, 0], [0, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 1]])
    assert not plane_contains([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
