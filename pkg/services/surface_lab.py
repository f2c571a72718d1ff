import logging
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from services.errors import HadamardError, PlaneComponentError
from services.exact_linalg import RatMatrix, det_bareiss
from services.groebner import GroebnerEngine, Ideal
from services.hadamard_product import SurfaceImplicit
from services.multipoly import MultiPoly
from services.projgeom import LineP3, ParamCurve, ProjPoint, hadamard_point

logger = logging.getLogger(__name__)

SAMPLE_PARAMETERS = ((1, 0), (0, 1), (1, 1), (1, -1))


@dataclass(frozen=True)
class SectionCurve:
    plane: int
    equation: MultiPoly

    @property
    def degree(self) -> int:
        return self.equation.total_degree()

    @property
    def remaining(self) -> tuple[int, ...]:
        return tuple(j for j in range(4) if j != self.plane)


def singular_locus_dimension(surface: SurfaceImplicit, engine: GroebnerEngine) -> int:
    """Проективная размерность общих нулей частных производных; −1 - гладкая поверхность"""
    if surface.degree < 2:
        raise HadamardError(f"Singular locus of a degree {surface.degree} surface")
    ideal = Ideal(4, tuple(surface.equation.gradient()))
    dimension = engine.ideal_dimension(ideal) - 1
    logger.info(f"Singular locus of the degree {surface.degree} surface has dimension {dimension}")
    return max(dimension, -1)


def is_cone_with_vertex(surface: SurfaceImplicit, vertex: ProjPoint) -> bool:
    """W(v·s + x·t) = t^deg·W(x) в кольце s, t, x₀..x₃"""
    equation = surface.equation
    if any(p.evaluate(vertex.coords) != 0 for p in equation.gradient()):
        return False
    s, t = MultiPoly.var(6, 0), MultiPoly.var(6, 1)
    images = [s.scale(vertex[k]) + t * MultiPoly.var(6, 2 + k) for k in range(4)]
    lhs = equation.substitute(images)
    rhs = t ** surface.degree * equation.embed(6, (2, 3, 4, 5))
    return lhs == rhs


def section(surface: SurfaceImplicit, i: int) -> SectionCurve:
    if i not in range(4):
        raise ValueError(f"Plane index must be in 0..3, got {i}")
    restricted = surface.equation.restrict({i: 0})
    if restricted.is_zero():
        raise PlaneComponentError(f"The plane H{i} is a component of the surface")
    keep = tuple(j for j in range(4) if j != i)
    return SectionCurve(i, restricted.drop_variables(keep))


def _conic_gram(equation: MultiPoly) -> RatMatrix:
    grid = [[Fraction(0)] * 3 for _ in range(3)]
    for exp, coef in equation.terms.items():
        indices = [j for j, k in enumerate(exp) for _ in range(k)]
        a, b = indices
        if a == b:
            grid[a][a] = coef
        else:
            grid[a][b] = grid[b][a] = coef / 2
    return RatMatrix.from_rows(grid)


def section_is_singular(curve: SectionCurve, engine: GroebnerEngine) -> bool:
    """Особая или неприведённая плоская кривая (над ℂ)"""
    if curve.degree <= 1:
        return False
    if curve.degree == 2:
        return det_bareiss(_conic_gram(curve.equation)) == 0
    ideal = Ideal(3, tuple(curve.equation.gradient()))
    return engine.ideal_dimension(ideal) >= 1


def line_in_surface(surface: SurfaceImplicit, line: LineP3) -> bool:
    return on_surface(surface, ParamCurve.from_line(line))


def on_surface(surface: SurfaceImplicit, curve: ParamCurve) -> bool:
    """Подстановка параметризации обращает уравнение в ноль"""
    return surface.equation.substitute(list(curve.forms)).is_zero()


def _rational_sqrt(value: Fraction) -> Fraction | None:
    if value < 0:
        return None
    num, den = isqrt(value.numerator), isqrt(value.denominator)
    if num * num == value.numerator and den * den == value.denominator:
        return Fraction(num, den)
    return None


def rational_plane_points(curve: ParamCurve, i: int) -> list[ProjPoint]:
    """Рациональные точки C ∩ Hᵢ (кривая не лежит в Hᵢ)"""
    form = curve.forms[i]
    if form.is_zero():
        raise PlaneComponentError(f"Curve lies in the plane H{i}")
    # корни f(s, t) = Σ c_k s^k t^(d−k)
    coeffs = [form.coefficient((k, curve.degree - k)) for k in range(curve.degree + 1)]
    roots: list[tuple[Fraction, Fraction]] = []
    if coeffs[-1] == 0:
        roots.append((Fraction(1), Fraction(0)))
        affine = coeffs[:-1]
    else:
        affine = coeffs
    while len(affine) > 1 and affine[-1] == 0:
        affine = affine[:-1]
    if len(affine) == 2:
        roots.append((-affine[0] / affine[1], Fraction(1)))
    elif len(affine) == 3:
        c, b, a = affine
        root = _rational_sqrt(b * b - 4 * a * c)
        if root is not None:
            roots.extend([((-b + root) / (2 * a), Fraction(1)), ((-b - root) / (2 * a), Fraction(1))])
    points = []
    for s, t in roots:
        point = ProjPoint(curve.point_at(s, t))
        if point not in points:
            points.append(point)
    return points


def curve_samples(curve: ParamCurve) -> list[ProjPoint]:
    result = []
    for s, t in SAMPLE_PARAMETERS:
        value = curve.point_at(s, t)
        if any(value):
            result.append(ProjPoint(value))
    for i in range(4):
        if not curve.forms[i].is_zero():
            result.extend(rational_plane_points(curve, i))
    return result


def candidate_vertices(c1: ParamCurve, c2: ParamCurve, extra: list[ProjPoint] | None = None) -> list[ProjPoint]:
    """Кандидаты в вершины: координатные точки, особые точки построения и их произведения"""
    candidates = [ProjPoint.coordinate(i) for i in range(4)] + list(extra or [])
    left, right = curve_samples(c1), curve_samples(c2)
    candidates.extend(left + right)
    for p in left:
        for q in right:
            try:
                candidates.append(hadamard_point(p, q))
            except HadamardError:
                continue
    unique: list[ProjPoint] = []
    for point in candidates:
        if point not in unique:
            unique.append(point)
    logger.debug(f"{len(unique)} vertex candidates")
    return unique
