import logging
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from services.errors import CenterNotOnPlaneError, DegenerateConfigurationError, InconsistentCentersError
from services.exact_linalg import RatMatrix, det_bareiss, kernel_basis, rank, to_fraction
from services.multipoly import MultiPoly, determinant
from services.projgeom import LineP3, ProjPoint, line_from_points
from services.quadric_lab import QUADRIC_MONOMIALS, Quadric

logger = logging.getLogger(__name__)

PARAMETER_NAMES = ("a1", "a2", "a3", "a4", "b1", "b2", "b3", "b4")

# компоненты множества, где ранг системы падает ниже 9
DEGENERACY_COMPONENTS: tuple[tuple[str, ...], ...] = (
    ("a1", "a2"), ("a1", "a3"), ("a2", "a4"), ("a3", "a4"),
    ("b1", "b2"), ("b1", "b3"), ("b2", "b4"), ("b3", "b4"),
    ("a4", "b1"), ("a3", "b2"), ("a2", "b3"), ("a1", "b4"),
    ("a1", "a4", "b2", "b3"), ("a2", "a3", "b1", "b4"),
)

# степень 10×10 минора по параметрам: 10 строк степени ≤ 4
MINOR_DEGREE_BOUND = 40

# квадрика семейства при b = 3 (a = 2)
PRINTED_B3_QUADRIC = MultiPoly(4, {
    (2, 0, 0, 0): 9, (1, 1, 0, 0): -12, (1, 0, 0, 1): -6, (0, 2, 0, 0): 3,
    (0, 1, 1, 0): -6, (0, 0, 2, 0): -9, (0, 0, 1, 1): 12, (0, 0, 0, 2): -3,
})


@dataclass(frozen=True)
class CollinearQuadruple:
    """p₀ ∈ H₀, p₁ ∈ H₁ и точки p₂, p₃ их прямой на H₂, H₃"""
    parameters: tuple[Fraction, ...]
    vectors: tuple[tuple[Fraction, ...], ...]

    @property
    def degenerate(self) -> bool:
        """Какая-то из точек лежит на координатной прямой или обнулилась"""
        return any(sum(1 for c in v if c == 0) != 1 for v in self.vectors)

    def points(self) -> list[ProjPoint]:
        return [ProjPoint(v) for v in self.vectors]

    def line(self) -> LineP3:
        p0, p1 = self.points()[:2]
        return line_from_points(p0, p1)


@dataclass(frozen=True)
class ReconstructionSystem:
    matrix: RatMatrix
    centers: tuple[ProjPoint, ...]
    rank: int
    kernel: tuple[tuple[Fraction, ...], ...]

    @property
    def degenerate(self) -> bool:
        return self.rank < 9


def quadruple_from_chart(a1, a2, a3, a4) -> CollinearQuadruple:
    a1, a2, a3, a4 = (to_fraction(a) for a in (a1, a2, a3, a4))
    zero = Fraction(0)
    vectors = (
        (zero, Fraction(1), a1, a2),
        (Fraction(1), zero, a3, a4),
        (-a1, a3, zero, a2 * a3 - a1 * a4),
        (-a2, a4, -a2 * a3 + a1 * a4, zero),
    )
    return CollinearQuadruple((a1, a2, a3, a4), vectors)


def centers_from_parameters(params: Sequence) -> list[tuple[Fraction, ...]]:
    """Oᵢ = pᵢ ⋆ qᵢ для параметров (a₁..a₄, b₁..b₄); векторы могут быть нулевыми"""
    p = quadruple_from_chart(*params[:4]).vectors
    q = quadruple_from_chart(*params[4:]).vectors
    return [tuple(x * y for x, y in zip(pi, qi)) for pi, qi in zip(p, q)]


def _gradient_rows(center: Sequence[Fraction], plane: int) -> list[list[Fraction]]:
    rows = []
    for j in range(4):
        if j == plane:
            continue
        row = []
        for exp in QUADRIC_MONOMIALS:
            k = exp[j]
            if not k:
                row.append(Fraction(0))
                continue
            value = Fraction(k)
            for var, power in enumerate(exp):
                e = power - (1 if var == j else 0)
                if e:
                    value *= center[var] ** e
            row.append(value)
        rows.append(row)
    return rows


def system_matrix(centers: Sequence[Sequence]) -> RatMatrix:
    """Матрица 12×10: строка (i, j) - коэффициенты ∂F/∂xⱼ(Oᵢ) при c₀..c₉"""
    rows = []
    for i, center in enumerate(centers):
        rows.extend(_gradient_rows([to_fraction(c) for c in center], i))
    return RatMatrix.from_rows(rows, cols=10)


def build_system(centers: Sequence[ProjPoint]) -> ReconstructionSystem:
    if len(centers) != 4:
        raise CenterNotOnPlaneError(f"Expected 4 centers, got {len(centers)}")
    for i, center in enumerate(centers):
        if center[i] != 0:
            raise CenterNotOnPlaneError(f"Center {center} is not on the plane H{i}")
    matrix = system_matrix([c.coords for c in centers])
    found = rank(matrix)
    kernel = kernel_basis(matrix)
    logger.info(f"Reconstruction system has rank {found}, kernel dimension {len(kernel)}")
    return ReconstructionSystem(matrix, tuple(centers), found, tuple(kernel))


def reconstruct(centers: Sequence[ProjPoint]) -> Quadric:
    """Единственная квадрика с данными особыми точками координатных сечений"""
    system = build_system(centers)
    if not system.kernel:
        logger.error("Centers admit no quadric")
        raise InconsistentCentersError(f"No quadric has singular coordinate sections at {[str(c) for c in centers]}")
    if len(system.kernel) > 1:
        logger.error(f"Kernel dimension {len(system.kernel)} for centers {[str(c) for c in centers]}")
        raise DegenerateConfigurationError(
            f"Centers determine a {len(system.kernel)}-dimensional family of quadrics (rank {system.rank})"
        )
    quadric = Quadric.from_coefficients(system.kernel[0]).normalized()
    for center in centers:
        if quadric.equation.evaluate(center.coords) != 0:
            raise InconsistentCentersError(f"Reconstructed quadric misses the center {center}")
    return quadric


@dataclass
class ComponentSummary:
    variables: tuple[str, ...]
    samples: int
    ranks: dict[int, int] = field(default_factory=dict)

    @property
    def max_rank(self) -> int:
        return max(self.ranks, default=0)


@dataclass
class SurveyReport:
    seed: int
    parameter_range: int
    generic_samples: int
    generic_ranks: dict[int, int]
    components: list[ComponentSummary]
    full_rank_count: int
    nonvanishing_minors: int
    minor_checks: int
    note: str


def _random_nonzero(rng: random.Random, bound: int) -> Fraction:
    value = 0
    while value == 0:
        value = rng.randint(-bound, bound)
    return Fraction(value)


def _nonzero_maximal_minors(matrix: RatMatrix) -> int:
    """Число ненулевых 10×10 миноров"""
    nonzero = 0
    for rows in combinations(range(matrix.rows), matrix.cols):
        if det_bareiss(matrix.submatrix(rows, range(matrix.cols))) != 0:
            nonzero += 1
    return nonzero


def degeneracy_survey(
    samples: int,
    rng: random.Random,
    seed: int,
    bound: int = 100,
    component_samples: int = 20,
    minor_samples: int | None = None,
) -> SurveyReport:
    """Выборочная проверка: ранг 9 в общем положении, ≤ 8 на компонентах, никогда 10"""
    logger.info(f"Degeneracy survey: {samples} generic samples, {component_samples} per component, range {bound}")
    full_rank = 0
    nonzero_minors = 0
    minor_checks = 0

    def record(params) -> int:
        nonlocal full_rank, nonzero_minors, minor_checks
        matrix = system_matrix(centers_from_parameters(params))
        found = rank(matrix)
        if found == 10:
            full_rank += 1
            logger.error(f"Full rank system at parameters {params}")
        # миноры только на первых minor_samples выборках, None - на всех
        if minor_samples is None or minor_checks < minor_samples:
            minor_checks += 1
            nonzero_minors += _nonzero_maximal_minors(matrix)
        return found

    generic: Counter = Counter()
    for _ in range(samples):
        generic[record([_random_nonzero(rng, bound) for _ in PARAMETER_NAMES])] += 1

    components = []
    for names in DEGENERACY_COMPONENTS:
        summary = ComponentSummary(names, component_samples)
        ranks: Counter = Counter()
        for _ in range(component_samples):
            params = [
                Fraction(0) if name in names else _random_nonzero(rng, bound)
                for name in PARAMETER_NAMES
            ]
            ranks[record(params)] += 1
        summary.ranks = dict(sorted(ranks.items()))
        components.append(summary)
        logger.debug(f"Component {names}: ranks {summary.ranks}")

    note = (
        f"Each 10x10 minor has degree at most {MINOR_DEGREE_BOUND} in the parameters; a nonzero minor "
        f"vanishes at a uniform nonzero draw from [-{bound}, {bound}]^8 with probability at most "
        f"{MINOR_DEGREE_BOUND}/{2 * bound}"
    )
    logger.info(f"Survey finished: generic ranks {dict(generic)}, full rank {full_rank} times")
    return SurveyReport(
        seed, bound, samples, dict(sorted(generic.items())), components, full_rank, nonzero_minors, minor_checks, note
    )


# --- семейство W_{a,b} с общей прямой L ---

FAMILY_LINE = (ProjPoint.of(0, 1, 1, 2), ProjPoint.of(1, 0, 1, 1))


def family_lines(a, b) -> tuple[LineP3, LineP3]:
    """L = ⟨(0:1:1:2), (1:0:1:1)⟩ и R = ⟨(0:1:1:1), (1:0:a:b)⟩"""
    left = line_from_points(*FAMILY_LINE)
    right = line_from_points(ProjPoint.of(0, 1, 1, 1), ProjPoint.of(1, 0, a, b))
    return left, right


def family_centers(a, b) -> list[ProjPoint]:
    a, b = to_fraction(a), to_fraction(b)
    return [
        ProjPoint.of(0, 1, 1, 2),
        ProjPoint.of(1, 0, a, b),
        ProjPoint.of(1, a, 0, a - b),
        ProjPoint.of(2, b, a - b, 0),
    ]


def _family_determinant(last_row) -> MultiPoly:
    a, b = MultiPoly.var(2, 0), MultiPoly.var(2, 1)
    one = MultiPoly.constant(2, 1)
    zero = MultiPoly.zero(2)
    matrix = [
        [zero, one, one, one.scale(2)],
        [one, zero, a, b],
        [one, a, zero, a - b],
        last_row(a, b, one, zero),
    ]
    return determinant(matrix)


def printed_coplanarity_determinant() -> MultiPoly:
    """Определитель с последней строкой (2, b, b−a, 0)"""
    return _family_determinant(lambda a, b, one, zero: [one.scale(2), b, b - a, zero])


def actual_coplanarity_determinant() -> MultiPoly:
    """Определитель настоящих центров, O₃ = (2:b:a−b:0)"""
    return _family_determinant(lambda a, b, one, zero: [one.scale(2), b, a - b, zero])
