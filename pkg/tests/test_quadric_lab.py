import random
from fractions import Fraction

import pytest

from services.errors import WrongQuadricError
from services.hadamard_product import implicitize
from services.multipoly import MultiPoly
from services.projgeom import ParamCurve, ProjPoint
from services.quadric_lab import (
    Quadric,
    SectionStatus,
    Smoothness,
    adjugate_diagonal,
    adjugate_jacobian_rank,
    coordinate_crossings,
    in_closure_Y,
    quadric_from_poly,
    restrict_to_plane,
    scl,
    scl_from_lines,
    section_lines,
    smoothness,
)
from services.surface_lab import line_in_surface
from utils.fixtures import generic_line_pair

SEGRE = MultiPoly(4, {(1, 0, 0, 1): 1, (0, 1, 1, 0): -1})


def line_pair_quadric(seed: int):
    rng = random.Random(seed)
    left, right = generic_line_pair(rng)
    product = implicitize(ParamCurve.from_line(left), ParamCurve.from_line(right), rng=rng)
    return left, right, product


def test_coefficient_roundtrip():
    coefficients = [Fraction(k, 3) for k in range(1, 11)]
    q = Quadric.from_coefficients(coefficients)
    assert q.coefficients == tuple(coefficients)
    assert quadric_from_poly(q.equation) == q
    assert q.gram[0, 1] == Fraction(1, 3)


def test_rejects_non_quadrics():
    with pytest.raises(WrongQuadricError):
        quadric_from_poly(MultiPoly.var(4, 0))
    with pytest.raises(WrongQuadricError):
        quadric_from_poly(MultiPoly.zero(4))
    with pytest.raises(WrongQuadricError):
        Quadric.from_coefficients([1, 2, 3])


def test_segre_is_smooth_with_null_adjugate_diagonal():
    q = quadric_from_poly(SEGRE)
    assert smoothness(q).kind == Smoothness.SMOOTH
    assert adjugate_diagonal(q) == (0, 0, 0, 0)
    assert in_closure_Y(q)


def test_cone_vertex():
    cone = quadric_from_poly(MultiPoly(4, {(2, 0, 0, 0): 1, (0, 2, 0, 0): 1, (0, 0, 2, 0): -1}))
    result = smoothness(cone)
    assert result.kind == Smoothness.CONE
    assert result.rank == 3
    assert result.vertex == ProjPoint.coordinate(3)
    assert not in_closure_Y(cone)


def test_segre_scl():
    result = scl(quadric_from_poly(SEGRE))
    assert result.all_reducible
    assert result.centers == [ProjPoint.coordinate(i) for i in (3, 2, 1, 0)]
    assert result.centers_distinct
    assert not result.centers_off_other_planes


def test_section_statuses():
    pair = quadric_from_poly(MultiPoly(4, {(1, 1, 0, 0): 1}))
    assert scl(pair).sections[2].status == SectionStatus.REDUCIBLE_CONIC
    assert scl(pair).sections[2].center == ProjPoint.coordinate(3)
    assert scl(pair).sections[0].status == SectionStatus.CONTAINED_IN_PLANE
    double = quadric_from_poly(MultiPoly(4, {(2, 0, 0, 0): 1}))
    assert scl(double).sections[1].status == SectionStatus.DOUBLE_LINE
    assert scl(quadric_from_poly(SEGRE + MultiPoly(4, {(0, 0, 0, 2): 1}))).sections[0].status == SectionStatus.SMOOTH_CONIC
    with pytest.raises(ValueError):
        restrict_to_plane(pair, 4)


def test_line_pair_scl_matches_plane_meets():
    for seed in (20, 21, 22):
        left, right, product = line_pair_quadric(seed)
        result = scl(quadric_from_poly(product.equation))
        assert result.all_reducible and result.centers_distinct and result.centers_off_other_planes
        assert result.centers == scl_from_lines(left, right)


def test_section_lines_lie_on_surface():
    left, right, product = line_pair_quadric(23)
    for first, second in section_lines(left, right):
        assert line_in_surface(product.surface, first)
        assert line_in_surface(product.surface, second)


def test_coordinate_crossings():
    left, right, _ = line_pair_quadric(24)
    crossings = coordinate_crossings(left, right)
    assert len(crossings) == 12
    assert all(len(p.zero_slots()) == 2 for p in crossings)
    assert not set(crossings) & set(scl_from_lines(left, right))


def test_adjugate_jacobian_rank_at_segre():
    assert adjugate_jacobian_rank(quadric_from_poly(SEGRE)) == 4
