import logging
import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations

from services.errors import CapExhaustedError, DegenerateSampleError, EmptyImageError, HadamardError
from services.exact_linalg import RatMatrix, kernel_basis, primitive_vector
from services.groebner import GroebnerEngine, Ideal
from services.multipoly import (
    Exponent,
    MultiPoly,
    generic_jacobian_rank,
    jacobian_rank,
    monomials_of_degree,
    polys_from_vectors,
)
from services.projgeom import DiagonalAuto, LineP3, ParamCurve, ProjPoint, share_common_factor, torus_act

logger = logging.getLogger(__name__)

# переменные произведения: (s, t) первой кривой, (u, v) второй
PRODUCT_VARS = ("s", "t", "u", "v")
JACOBIAN_ATTEMPTS = 3
RESAMPLE_ATTEMPTS = 10
# ранг аффинной матрицы Якоби бистепенной параметризации не больше 3
MAX_IMAGE_RANK = 3


class ImageKind(str, Enum):
    POINT = "PointImage"
    CURVE = "CurveImage"
    PLANE = "PlaneImage"
    SURFACE = "SurfaceImage"


@dataclass(frozen=True)
class SurfaceImplicit:
    equation: MultiPoly

    def __post_init__(self):
        if self.equation.nvars != 4 or self.equation.is_zero() or not self.equation.is_homogeneous():
            raise HadamardError(f"Not a homogeneous surface equation in x0..x3: {self.equation}")
        object.__setattr__(self, "equation", self.equation.normalized())

    @property
    def degree(self) -> int:
        return self.equation.total_degree()


@dataclass(frozen=True)
class ClassifiedProduct:
    kind: ImageKind
    image_dimension: int
    kernel_dimensions: tuple[tuple[int, int], ...] = ()
    point: ProjPoint | None = None
    plane: MultiPoly | None = None
    surface: SurfaceImplicit | None = None

    @property
    def equation(self) -> MultiPoly | None:
        """Уравнение образа: плоскость или поверхность"""
        if self.surface is not None:
            return self.surface.equation
        return self.plane


@dataclass(frozen=True)
class MorphismResult:
    is_morphism: bool
    witnesses: tuple[tuple[int, ...], ...] = field(default_factory=tuple)


def _curve_forms(curve: ParamCurve, offset: int) -> list[MultiPoly]:
    return [f.embed(4, (offset, offset + 1)) for f in curve.forms]


def product_parametrization(c1: ParamCurve, c2: ParamCurve) -> tuple[MultiPoly, ...]:
    """Покоординатные произведения форм: бистепень (deg C₁, deg C₂) в переменных s,t,u,v"""
    left, right = _curve_forms(c1, 0), _curve_forms(c2, 2)
    return tuple(a * b for a, b in zip(left, right))


def _random_parameters(rng: random.Random, bound: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(rng.randint(-bound, bound)) for _ in range(4))


def _sampled_rank(forms: tuple[MultiPoly, ...], rng: random.Random, bound: int, attempts: int) -> int:
    best = 0
    for attempt in range(attempts):
        point = _random_parameters(rng, bound)
        r = jacobian_rank(forms, point)
        logger.debug(f"Jacobian rank {r} at attempt {attempt}")
        best = max(best, r)
    return best


def image_dimension(forms: tuple[MultiPoly, ...], rng: random.Random, bound: int = 9) -> int:
    """Ранг аффинной матрицы Якоби параметризации: 1 - точка, 2 - кривая, 3 - поверхность"""
    best = _sampled_rank(forms, rng, bound, JACOBIAN_ATTEMPTS)
    if best >= MAX_IMAGE_RANK:
        return best
    generic = generic_jacobian_rank(forms, at_most=MAX_IMAGE_RANK)
    if best == generic:
        return best
    logger.warning(f"Jacobian rank {best} at every sampled point, generic rank {generic}; resampling")
    best = max(best, _sampled_rank(forms, rng, 10 * bound, RESAMPLE_ATTEMPTS))
    if best < generic:
        raise DegenerateSampleError(
            f"Jacobian rank {best} at every sampled parameter point, generic rank is {generic}"
        )
    return best


def kernel_in_degree(forms: tuple[MultiPoly, ...], degree: int) -> tuple[list[Exponent], list[tuple[Fraction, ...]]]:
    """Ядро подстановки форм степени degree в параметризацию"""
    monomials = monomials_of_degree(4, degree)
    images = [MultiPoly.monomial(exp).substitute(list(forms)) for exp in monomials]
    keys = sorted({e for img in images for e in img.terms})
    matrix = RatMatrix.from_rows(
        [[img.coefficient(key) for img in images] for key in keys] or [[0] * len(monomials)],
        cols=len(monomials),
    )
    return monomials, kernel_basis(matrix)


def implicitize(
    c1: ParamCurve,
    c2: ParamCurve,
    cap: int | None = None,
    rng: random.Random | None = None,
) -> ClassifiedProduct:
    """Классификация и неявное уравнение замыкания образа C₁ ⋆ C₂ методом ядра"""
    rng = rng or random.Random(0)
    cap = cap if cap is not None else 2 * c1.degree * c2.degree
    if cap < 1:
        raise ValueError(f"Degree cap must be positive, got {cap}")
    forms = product_parametrization(c1, c2)
    if all(f.is_zero() for f in forms):
        raise EmptyImageError("Product parametrization is identically zero")

    dimension = image_dimension(forms, rng)
    logger.info(f"Implicitizing product of curves of degrees {c1.degree}, {c2.degree}; Jacobian rank {dimension}")

    if dimension <= 1:
        for _ in range(100):
            value = tuple(f.evaluate(_random_parameters(rng, 9)) for f in forms)
            if any(value):
                return ClassifiedProduct(ImageKind.POINT, dimension, point=ProjPoint(value))
        raise EmptyImageError("Could not sample a defined point of the product")

    kernels: list[tuple[int, int]] = []
    monomials, kernel = kernel_in_degree(forms, 1)
    kernels.append((1, len(kernel)))
    plane = polys_from_vectors(kernel, monomials)[0].normalized() if kernel else None

    if dimension == 2:
        logger.info("Product image is a curve")
        return ClassifiedProduct(ImageKind.CURVE, dimension, tuple(kernels), plane=plane)
    if plane is not None:
        logger.info(f"Product image is the plane {plane.format()}")
        return ClassifiedProduct(ImageKind.PLANE, dimension, tuple(kernels), plane=plane)

    for degree in range(2, cap + 1):
        monomials, kernel = kernel_in_degree(forms, degree)
        kernels.append((degree, len(kernel)))
        logger.debug(f"Kernel dimension {len(kernel)} in degree {degree}")
        if not kernel:
            continue
        if len(kernel) > 1:
            raise HadamardError(f"Kernel of dimension {len(kernel)} at the minimal degree {degree}")
        surface = SurfaceImplicit(polys_from_vectors(kernel, monomials)[0])
        logger.info(f"Product image is a surface of degree {surface.degree}")
        return ClassifiedProduct(ImageKind.SURFACE, dimension, tuple(kernels), surface=surface)

    logger.error(f"No implicit equation up to degree {cap}")
    raise CapExhaustedError(f"No implicit equation of degree at most {cap}")


def implicitize_by_elimination(c1: ParamCurve, c2: ParamCurve, engine: GroebnerEngine) -> list[MultiPoly]:
    """Независимая проверка: исключение s,t,u,v из идеала графа xₖ − Pₖ"""
    forms = product_parametrization(c1, c2)
    generators = [
        MultiPoly.var(8, 4 + k) - form.embed(8, (0, 1, 2, 3))
        for k, form in enumerate(forms)
    ]
    eliminated = engine.eliminate(Ideal(8, tuple(generators)), 4)
    result = sorted(
        (g.drop_variables((4, 5, 6, 7)).normalized() for g in eliminated.generators),
        key=lambda g: (g.total_degree(), g.format()),
    )
    logger.info(f"Elimination oracle returned {len(result)} generators")
    return result


def morphism_check(c1: ParamCurve, c2: ParamCurve) -> MorphismResult:
    """Определено ли p ⋆ q для всех пар параметров (нет базисных точек)"""
    witnesses = []
    for size in range(5):
        for subset in combinations(range(4), size):
            first = [c1.forms[k] for k in subset]
            second = [c2.forms[k] for k in range(4) if k not in subset]
            if share_common_factor(first) and share_common_factor(second):
                witnesses.append(subset)
    logger.info(f"Morphism check found {len(witnesses)} base-point patterns")
    return MorphismResult(not witnesses, tuple(witnesses))


def same_image(a: ClassifiedProduct, b: ClassifiedProduct) -> bool:
    if a.kind != b.kind:
        return False
    if a.kind == ImageKind.POINT:
        return a.point == b.point
    return a.equation == b.equation


def torus_invariance_check(
    c1: ParamCurve,
    c2: ParamCurve,
    psi: DiagonalAuto,
    rng: random.Random | None = None,
) -> bool:
    """Совпадают ли C₁ ⋆ C₂ и ψ(C₁) ⋆ ψ⁻¹(C₂)"""
    original = implicitize(c1, c2, rng=rng)
    moved = implicitize(torus_act(psi, c1), torus_act(psi.inverse(), c2), rng=rng)
    result = same_image(original, moved)
    logger.info(f"Torus invariance for {psi.entries}: {result}")
    return result


def _parameter_pair(rng: random.Random, bound: int) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    while True:
        first = (Fraction(rng.randint(-bound, bound)), Fraction(rng.randint(-bound, bound)))
        second = (Fraction(rng.randint(-bound, bound)), Fraction(rng.randint(-bound, bound)))
        if any(first) and any(second):
            return primitive_vector(first), primitive_vector(second)


def injectivity_check(c1: ParamCurve, c2: ParamCurve, rng: random.Random, samples: int = 20, bound: int = 9) -> bool:
    """Различные пары параметров дают различные точки произведения"""
    forms = product_parametrization(c1, c2)
    seen: dict[ProjPoint, tuple] = {}
    draws = 0
    while len(seen) < samples and draws < 50 * samples:
        draws += 1
        first, second = _parameter_pair(rng, bound)
        value = tuple(f.evaluate(first + second) for f in forms)
        if not any(value):
            continue
        point = ProjPoint(value)
        if point in seen and seen[point] != (first, second):
            logger.info(f"Parameters {seen[point]} and {(first, second)} collide at {point}")
            return False
        seen[point] = (first, second)
    return True


def hadamard_power(curve: ParamCurve, power: int) -> tuple[MultiPoly, ...]:
    """Параметризация C^{⋆power}: независимые копии (s,t) для каждого сомножителя"""
    if power < 0:
        raise ValueError(f"Hadamard power must be non-negative, got {power}")
    nvars = 2 * power
    result = [MultiPoly.constant(nvars, 1) for _ in range(4)]
    for copy in range(power):
        positions = (2 * copy, 2 * copy + 1)
        result = [r * f.embed(nvars, positions) for r, f in zip(result, curve.forms)]
    return tuple(result)


def power_dimension(curve: ParamCurve, power: int, rng: random.Random) -> int:
    """Проективная размерность C^{⋆power}"""
    forms = hadamard_power(curve, power)
    if power == 0:
        return 0
    best = 0
    for _ in range(JACOBIAN_ATTEMPTS):
        point = [Fraction(rng.randint(-9, 9)) for _ in range(2 * power)]
        best = max(best, jacobian_rank(forms, point))
    return best - 1


def square_is_planar(line: LineP3, rng: random.Random | None = None) -> bool:
    """L^{⋆2} лежит в плоскости"""
    curve = ParamCurve.from_line(line)
    return implicitize(curve, curve, rng=rng).kind == ImageKind.PLANE


def plane_family_check(line: LineP3, p: ProjPoint, rng: random.Random | None = None) -> bool:
    """L ⋆ (p ⋆ L) - плоскость, равная p ⋆ L^{⋆2}"""
    if any(line.meets_coordinate_line(i, j) for i, j in combinations(range(4), 2)):
        raise HadamardError(f"Line {line} meets a coordinate line")
    if p.zero_slots():
        raise HadamardError(f"Point {p} has a zero coordinate")
    curve = ParamCurve.from_line(line)
    moved = torus_act(DiagonalAuto(p.coords), curve)
    product = implicitize(curve, moved, rng=rng)
    square = implicitize(curve, curve, rng=rng)
    if product.kind != ImageKind.PLANE or square.kind != ImageKind.PLANE:
        return False
    # p ⋆ {ℓ(x) = 0} = {Σ ℓₖ·yₖ/pₖ = 0}
    expected = MultiPoly.linear_form(
        [square.plane.coefficient(tuple(int(j == k) for j in range(4))) / p[k] for k in range(4)]
    ).normalized()
    result = product.plane == expected
    logger.info(f"Plane family check for p={p}: {result}")
    return result
