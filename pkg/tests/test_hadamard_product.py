import random

import pytest

from services.errors import CapExhaustedError, DegenerateSampleError, EmptyImageError
from services.fiber_chart import segre_pair
from services.groebner import GroebnerEngine
from services.hadamard_product import (
    JACOBIAN_ATTEMPTS,
    ImageKind,
    hadamard_power,
    image_dimension,
    implicitize,
    implicitize_by_elimination,
    injectivity_check,
    morphism_check,
    plane_family_check,
    power_dimension,
    product_parametrization,
    same_image,
    square_is_planar,
    torus_invariance_check,
)
from services.multipoly import MultiPoly
from services.projgeom import DiagonalAuto, ParamCurve, ProjPoint, line_from_points, torus_act
from utils.fixtures import generic_line, generic_line_pair, random_point

SEGRE = MultiPoly(4, {(1, 0, 0, 1): 1, (0, 1, 1, 0): -1}).normalized()


def curve(*points) -> ParamCurve:
    return ParamCurve.from_line(line_from_points(*(ProjPoint.of(*p) for p in points)))


def test_segre_product():
    left, right = segre_pair()
    product = implicitize(left, right)
    assert product.kind == ImageKind.SURFACE
    assert product.equation == SEGRE
    assert product.kernel_dimensions == ((1, 0), (2, 1))
    assert morphism_check(left, right).is_morphism


def test_elimination_oracle_on_segre():
    left, right = segre_pair()
    assert implicitize_by_elimination(left, right, GroebnerEngine()) == [SEGRE]


def test_generic_line_pairs_agree_with_elimination():
    rng = random.Random(15)
    engine = GroebnerEngine()
    for _ in range(3):
        left, right = (ParamCurve.from_line(line) for line in generic_line_pair(rng))
        product = implicitize(left, right, rng=rng)
        assert product.surface.degree == 2
        assert implicitize_by_elimination(left, right, engine) == [product.equation]


def test_point_image():
    product = implicitize(curve((1, 0, 0, 0), (0, 1, 0, 0)), curve((1, 0, 1, 1), (0, 0, 1, 1)))
    assert product.kind == ImageKind.POINT
    assert product.point == ProjPoint.coordinate(0)


def test_curve_image():
    product = implicitize(curve((1, 0, 0, 0), (0, 1, 0, 0)), curve((1, 1, 0, 0), (1, 2, 0, 0)))
    assert product.kind == ImageKind.CURVE
    assert product.image_dimension == 2


def test_empty_image():
    with pytest.raises(EmptyImageError):
        implicitize(curve((1, 0, 0, 0), (0, 1, 0, 0)), curve((0, 0, 1, 0), (0, 0, 0, 1)))


def test_cap_exhausted():
    left, right = segre_pair()
    with pytest.raises(CapExhaustedError):
        implicitize(left, right, cap=1)


def test_base_points_detected():
    left = curve((1, 0, 0, 0), (1, 1, 1, 1))
    right = curve((0, 1, 2, 3), (0, 1, 1, 0))
    result = morphism_check(left, right)
    assert not result.is_morphism
    assert result.witnesses


def test_square_of_line_is_planar():
    rng = random.Random(16)
    line = generic_line(rng)
    assert square_is_planar(line, rng)
    assert power_dimension(ParamCurve.from_line(line), 2, rng) == 2
    assert power_dimension(ParamCurve.from_line(line), 1, rng) == 1


def test_hadamard_power_forms():
    left, _ = segre_pair()
    assert hadamard_power(left, 0) == tuple(MultiPoly.constant(0, 1) for _ in range(4))
    square = hadamard_power(left, 2)
    assert all(f.nvars == 4 and f.total_degree() == 2 for f in square)
    with pytest.raises(ValueError):
        hadamard_power(left, -1)


def test_plane_family():
    rng = random.Random(17)
    line = generic_line(rng)
    for _ in range(3):
        assert plane_family_check(line, random_point(rng, nonzero_entries=True), rng)


def test_torus_invariance():
    rng = random.Random(18)
    left, right = segre_pair()
    for _ in range(3):
        assert torus_invariance_check(left, right, DiagonalAuto.sample(rng), rng)


def test_same_image_and_injectivity():
    rng = random.Random(19)
    left, right = segre_pair()
    assert same_image(implicitize(left, right), implicitize(right, left))
    assert injectivity_check(left, right, rng, samples=10)


def test_one_sided_torus_action_moves_the_product():
    left, right = segre_pair()
    psi = DiagonalAuto((1, 2, 3, 4))
    assert torus_invariance_check(left, right, psi)
    moved = implicitize(torus_act(psi, left), right)
    assert moved.kind == ImageKind.SURFACE
    assert not same_image(implicitize(left, right), moved)


class ZerosFirst(random.Random):
    """Первые zeros вызовов randint возвращают 0: параметр (0, 0, 0, 0)"""
    zeros = 0

    def randint(self, a, b):
        if self.zeros > 0:
            self.zeros -= 1
            return 0
        return super().randint(a, b)


def test_jacobian_drop_at_chosen_point_is_resampled():
    left, right = segre_pair()
    rng = ZerosFirst(5)
    rng.zeros = 4 * JACOBIAN_ATTEMPTS
    assert image_dimension(product_parametrization(left, right), rng) == 3


def test_jacobian_drop_everywhere_sampled_is_reported():
    left, right = segre_pair()
    rng = ZerosFirst(5)
    rng.zeros = 10 ** 6
    with pytest.raises(DegenerateSampleError, match="generic rank is 3"):
        implicitize(left, right, rng=rng)


def test_point_image_is_not_a_sampling_drop():
    rng = ZerosFirst(6)
    rng.zeros = 4 * JACOBIAN_ATTEMPTS
    product = implicitize(curve((1, 0, 0, 0), (0, 1, 0, 0)), curve((1, 0, 0, 0), (0, 0, 1, 0)), rng=rng)
    assert product.kind == ImageKind.POINT
