import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations

from services.errors import WrongQuadricError
from services.exact_linalg import RatMatrix, adjugate, det_bareiss, kernel_basis, rank
from services.multipoly import Exponent, MultiPoly, determinant, jacobian_rank, monomials_of_degree
from services.projgeom import LineP3, ProjPoint, hadamard_point, plane_contains, point_star_line

logger = logging.getLogger(__name__)

# c0..c9: x0², x0x1, x0x2, x0x3, x1², x1x2, x1x3, x2², x2x3, x3²
QUADRIC_MONOMIALS: list[Exponent] = monomials_of_degree(4, 2)


def _pair(exp: Exponent) -> tuple[int, int]:
    indices = [i for i, k in enumerate(exp) for _ in range(k)]
    return indices[0], indices[1]


@dataclass(frozen=True)
class Quadric:
    gram: RatMatrix

    def __post_init__(self):
        if self.gram.rows != 4 or not self.gram.is_symmetric():
            raise WrongQuadricError("Gram matrix must be a symmetric 4x4 matrix")

    @classmethod
    def from_coefficients(cls, coefficients) -> "Quadric":
        """Квадрика по вектору c0..c9"""
        coefficients = [Fraction(c) for c in coefficients]
        if len(coefficients) != 10:
            raise WrongQuadricError(f"Expected 10 coefficients, got {len(coefficients)}")
        grid = [[Fraction(0)] * 4 for _ in range(4)]
        for exp, c in zip(QUADRIC_MONOMIALS, coefficients):
            i, j = _pair(exp)
            if i == j:
                grid[i][i] = c
            else:
                grid[i][j] = grid[j][i] = c / 2
        return cls(RatMatrix.from_rows(grid))

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        result = []
        for exp in QUADRIC_MONOMIALS:
            i, j = _pair(exp)
            result.append(self.gram[i, i] if i == j else 2 * self.gram[i, j])
        return tuple(result)

    @property
    def equation(self) -> MultiPoly:
        return MultiPoly(4, dict(zip(QUADRIC_MONOMIALS, self.coefficients)))

    def normalized(self) -> "Quadric":
        return quadric_from_poly(self.equation.normalized())


class Smoothness(str, Enum):
    SMOOTH = "Smooth"
    CONE = "Cone"


@dataclass(frozen=True)
class SmoothnessResult:
    kind: Smoothness
    rank: int
    vertex_space: tuple[tuple[Fraction, ...], ...] = ()

    @property
    def vertex(self) -> ProjPoint | None:
        if len(self.vertex_space) == 1:
            return ProjPoint(self.vertex_space[0])
        return None


@dataclass(frozen=True)
class ConicInPlane:
    plane: int
    gram: RatMatrix

    @property
    def remaining(self) -> tuple[int, ...]:
        return tuple(j for j in range(4) if j != self.plane)

    def embed(self, vector) -> ProjPoint:
        """Вектор в оставшихся координатах → точка P³ с нулём в позиции plane"""
        coords = list(vector)
        coords.insert(self.plane, Fraction(0))
        return ProjPoint(tuple(coords))


class SectionStatus(str, Enum):
    SMOOTH_CONIC = "SmoothConic"
    REDUCIBLE_CONIC = "ReducibleConic"
    DOUBLE_LINE = "DoubleLine"
    CONTAINED_IN_PLANE = "ContainedInPlane"


@dataclass(frozen=True)
class PlaneSection:
    plane: int
    status: SectionStatus
    center: ProjPoint | None = None


@dataclass(frozen=True)
class SCLResult:
    sections: tuple[PlaneSection, ...]
    all_reducible: bool
    centers_distinct: bool
    centers_off_other_planes: bool
    centers_coplanar: bool | None

    @property
    def centers(self) -> list[ProjPoint]:
        return [s.center for s in self.sections if s.center is not None]


def quadric_from_poly(f: MultiPoly) -> Quadric:
    if f.nvars != 4:
        raise WrongQuadricError(f"Quadric needs 4 variables, got {f.nvars}")
    if f.is_zero() or f.degree_in(range(4)) != {2}:
        raise WrongQuadricError(f"Not a nonzero quadratic form: {f}")
    return Quadric.from_coefficients([f.coefficient(exp) for exp in QUADRIC_MONOMIALS])


def smoothness(q: Quadric) -> SmoothnessResult:
    """Гладкость: det(A) ≠ 0, иначе конус с вершинным пространством ker A"""
    if det_bareiss(q.gram) != 0:
        return SmoothnessResult(Smoothness.SMOOTH, 4)
    kernel = kernel_basis(q.gram)
    logger.info(f"Quadric is a cone of rank {4 - len(kernel)}")
    return SmoothnessResult(Smoothness.CONE, 4 - len(kernel), tuple(kernel))


def adjugate_diagonal(q: Quadric) -> tuple[Fraction, ...]:
    return adjugate(q.gram).diagonal()


def in_closure_Y(q: Quadric) -> bool:
    """Нулевая диагональ присоединённой матрицы"""
    return all(v == 0 for v in adjugate_diagonal(q))


def restrict_to_plane(q: Quadric, i: int) -> ConicInPlane:
    if i not in range(4):
        raise ValueError(f"Plane index must be in 0..3, got {i}")
    return ConicInPlane(i, q.gram.delete(i, i))


def _classify_section(section: ConicInPlane) -> PlaneSection:
    r = rank(section.gram)
    if r == 3:
        return PlaneSection(section.plane, SectionStatus.SMOOTH_CONIC)
    if r == 2:
        kernel = kernel_basis(section.gram)
        return PlaneSection(section.plane, SectionStatus.REDUCIBLE_CONIC, section.embed(kernel[0]))
    if r == 1:
        return PlaneSection(section.plane, SectionStatus.DOUBLE_LINE)
    return PlaneSection(section.plane, SectionStatus.CONTAINED_IN_PLANE)


def scl(q: Quadric) -> SCLResult:
    """Особые точки сечений координатными плоскостями"""
    sections = tuple(_classify_section(restrict_to_plane(q, i)) for i in range(4))
    centers = [s.center for s in sections if s.center is not None]
    all_reducible = len(centers) == 4
    distinct = len(set(centers)) == len(centers)
    off_planes = all(
        all(s.center[j] != 0 for j in range(4) if j != s.plane)
        for s in sections
        if s.center is not None
    ) and all_reducible
    coplanar = plane_contains([c.coords for c in centers]) if all_reducible else None
    logger.info(f"SCL: {len(centers)} centers, distinct={distinct}, off planes={off_planes}, coplanar={coplanar}")
    return SCLResult(sections, all_reducible, distinct, off_planes, coplanar)


def scl_from_lines(left: LineP3, right: LineP3) -> list[ProjPoint]:
    """Центры Oᵢ = (L ∩ Hᵢ) ⋆ (R ∩ Hᵢ)"""
    return [hadamard_point(left.meet_plane(i), right.meet_plane(i)) for i in range(4)]


def section_lines(left: LineP3, right: LineP3) -> list[tuple[LineP3, LineP3]]:
    """Пары прямых pᵢ ⋆ R и L ⋆ qᵢ, составляющие сечение W ∩ Hᵢ"""
    return [
        (hadamard_point_line(left.meet_plane(i), right), hadamard_point_line(right.meet_plane(i), left))
        for i in range(4)
    ]


def coordinate_crossings(left: LineP3, right: LineP3) -> list[ProjPoint]:
    """Точки пересечения прямых из разных сечений на координатных прямых"""
    lines = [line for pair in section_lines(left, right) for line in pair]
    points: list[ProjPoint] = []
    for a, b in combinations(lines, 2):
        meet = _line_meet(a, b)
        if meet is not None and len(meet.zero_slots()) >= 2 and meet not in points:
            points.append(meet)
    return sorted(points, key=lambda p: p.coords)


def hadamard_point_line(p: ProjPoint, line: LineP3) -> LineP3:
    image = point_star_line(p, line)
    if not isinstance(image, LineP3):
        raise WrongQuadricError(f"{p} * {line} is not a line")
    return image


def _line_meet(a: LineP3, b: LineP3) -> ProjPoint | None:
    """Общая точка двух различных пересекающихся прямых"""
    rows = [a.span.row(0), a.span.row(1), b.span.row(0), b.span.row(1)]
    if rank(RatMatrix.from_rows(rows)) != 3:
        return None
    # x = α·a0 + β·a1 = γ·b0 + δ·b1
    relation = kernel_basis(RatMatrix.from_rows(rows).transpose())[0]
    alpha, beta = relation[0], relation[1]
    return ProjPoint(tuple(alpha * x + beta * y for x, y in zip(rows[0], rows[1])))


def adjugate_diagonal_polys() -> list[MultiPoly]:
    """Диагональ присоединённой матрицы как многочлены от c0..c9"""
    grid = [[MultiPoly.zero(10) for _ in range(4)] for _ in range(4)]
    for k, exp in enumerate(QUADRIC_MONOMIALS):
        i, j = _pair(exp)
        c = MultiPoly.var(10, k)
        if i == j:
            grid[i][i] = c
        else:
            grid[i][j] = grid[j][i] = c.scale(Fraction(1, 2))
    return [
        determinant([[grid[r][c] for c in range(4) if c != i] for r in range(4) if r != i])
        for i in range(4)
    ]


def adjugate_jacobian_rank(q: Quadric) -> int:
    """Ранг якобиана диагонали присоединённой матрицы в точке q"""
    return jacobian_rank(adjugate_diagonal_polys(), q.coefficients)
