import random
from fractions import Fraction

import pytest

from services import identify
from services.errors import CenterNotOnPlaneError, DegenerateConfigurationError, InconsistentCentersError
from services.exact_linalg import RatMatrix, kernel_basis, rank, rref
from services.hadamard_product import implicitize
from services.multipoly import MultiPoly
from services.projgeom import ParamCurve, ProjPoint
from services.quadric_lab import quadric_from_poly, scl
from utils.fixtures import generic_line_pair

A, B = MultiPoly.var(2, 0), MultiPoly.var(2, 1)


def test_reconstruct_generic_line_pairs():
    rng = random.Random(30)
    for _ in range(3):
        left, right = generic_line_pair(rng)
        product = implicitize(ParamCurve.from_line(left), ParamCurve.from_line(right), rng=rng)
        quadric = quadric_from_poly(product.equation)
        centers = scl(quadric).centers
        system = identify.build_system(centers)
        assert system.rank == 9
        assert len(system.kernel) == 1
        assert identify.reconstruct(centers) == quadric.normalized()


def test_segre_centers_are_degenerate():
    centers = [ProjPoint.coordinate(i) for i in (3, 2, 1, 0)]
    system = identify.build_system(centers)
    assert system.degenerate
    assert len(system.kernel) == 2
    with pytest.raises(DegenerateConfigurationError):
        identify.reconstruct(centers)


def test_center_off_its_plane():
    centers = [ProjPoint.of(1, 1, 1, 1), ProjPoint.of(1, 0, 1, 1), ProjPoint.of(1, 1, 0, 1), ProjPoint.of(1, 1, 1, 0)]
    with pytest.raises(CenterNotOnPlaneError):
        identify.build_system(centers)
    with pytest.raises(CenterNotOnPlaneError):
        identify.build_system(centers[1:])


def test_random_centers_usually_inconsistent():
    rng = random.Random(31)
    raised = 0
    for _ in range(5):
        centers = []
        for i in range(4):
            coords = [Fraction(rng.randint(1, 20)) for _ in range(4)]
            coords[i] = Fraction(0)
            centers.append(ProjPoint(tuple(coords)))
        try:
            identify.reconstruct(centers)
        except InconsistentCentersError:
            raised += 1
    assert raised > 0


def test_chart_quadruple_is_collinear():
    quadruple = identify.quadruple_from_chart(2, 3, 5, 7)
    assert not quadruple.degenerate
    line = quadruple.line()
    for i, point in enumerate(quadruple.points()):
        assert point[i] == 0
        assert line.contains(point)


def test_system_matrix_shape_and_rank_bound():
    rng = random.Random(32)
    for _ in range(5):
        params = [Fraction(rng.choice([-1, 1]) * rng.randint(1, 30)) for _ in identify.PARAMETER_NAMES]
        matrix = identify.system_matrix(identify.centers_from_parameters(params))
        assert (matrix.rows, matrix.cols) == (12, 10)


def test_survey_never_full_rank():
    rng = random.Random(33)
    report = identify.degeneracy_survey(8, rng, 33, bound=30, component_samples=2, minor_samples=0)
    assert report.full_rank_count == 0
    assert max(report.generic_ranks) <= 9
    assert 9 in report.generic_ranks
    assert len(report.components) == 14
    assert all(c.max_rank <= 8 for c in report.components)
    assert "40/60" in report.note


def test_survey_minors_vanish():
    rng = random.Random(34)
    report = identify.degeneracy_survey(1, rng, 34, bound=10, component_samples=0)
    assert report.minor_checks == 1
    assert report.nonvanishing_minors == 0


def test_coplanarity_determinants():
    printed = identify.printed_coplanarity_determinant()
    actual = identify.actual_coplanarity_determinant()
    assert printed.normalized() == (A * (A.scale(3) - B.scale(2))).normalized()
    assert actual.normalized() == ((A - B.scale(2)) ** 2).normalized()
    assert actual.evaluate([2, 3]) == 16


def test_family_reconstruction_matches_displayed_quadric():
    centers = identify.family_centers(2, 3)
    quadric = identify.reconstruct(centers)
    assert quadric.equation.normalized() == identify.PRINTED_B3_QUADRIC.normalized()
    left, right = identify.family_lines(2, 3)
    product = implicitize(ParamCurve.from_line(left), ParamCurve.from_line(right))
    assert product.equation == identify.PRINTED_B3_QUADRIC.normalized()
    result = scl(quadric)
    assert result.centers == centers
    assert result.centers_coplanar is False


def test_survey_minor_samples_limit():
    rng = random.Random(35)
    report = identify.degeneracy_survey(3, rng, 35, bound=10, component_samples=1, minor_samples=2)
    assert report.minor_checks == 2
    assert report.nonvanishing_minors == 0
    assert identify.degeneracy_survey(2, rng, 35, bound=10, component_samples=0, minor_samples=0).minor_checks == 0


def test_system_is_scale_invariant_in_each_center():
    rng = random.Random(36)
    for _ in range(5):
        params = [Fraction(rng.choice([-1, 1]) * rng.randint(1, 40)) for _ in identify.PARAMETER_NAMES]
        centers = identify.centers_from_parameters(params)
        factors = [Fraction(rng.choice([-1, 1]) * rng.randint(1, 7), rng.randint(1, 5)) for _ in range(4)]
        scaled = [tuple(f * x for x in c) for f, c in zip(factors, centers)]
        original = identify.system_matrix(centers)
        moved = identify.system_matrix(scaled)
        assert rank(original) == rank(moved)
        assert row_space(kernel_basis(original)) == row_space(kernel_basis(moved))


def row_space(vectors) -> RatMatrix | None:
    return rref(RatMatrix.from_rows(vectors))[0] if vectors else None
