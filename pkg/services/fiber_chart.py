import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from services.groebner import GroebnerEngine, Ideal
from services.hadamard_product import torus_invariance_check
from services.multipoly import MultiPoly
from services.projgeom import DiagonalAuto, ParamCurve, ProjPoint, line_from_points

logger = logging.getLogger(__name__)

CHART_VARS = ("u1", "u2", "v1", "v2", "z1", "z2", "w1", "w2")
U1, U2, V1, V2, Z1, Z2, W1, W2 = range(8)
# λ₁, λ₂, μ₁, μ₂ в кольце разложения
LAMBDA1, LAMBDA2, MU1, MU2 = range(8, 12)

CLAIMED_DIMENSION = 3

SEGRE_LEFT = (ProjPoint.of(1, 0, 1, 0), ProjPoint.of(0, 1, 0, 1))
SEGRE_RIGHT = (ProjPoint.of(1, 1, 0, 0), ProjPoint.of(0, 0, 1, 1))


def _chart_var(index: int) -> MultiPoly:
    return MultiPoly.var(8, index)


def _binomial(a: int, b: int, c: int | None = None, d: int | None = None) -> MultiPoly:
    result = _chart_var(a) * _chart_var(b)
    if c is not None:
        result = result - _chart_var(c) * _chart_var(d)
    return result


# семь уравнений в напечатанном виде: v₁w₁, v₁w₂, v₂w₁, v₂w₂ − u₂z₂, u₁z₂, u₂z₁, u₂z₂
PRINTED_CLAIM_GENERATORS = (
    _binomial(V1, W1),
    _binomial(V1, W2),
    _binomial(V2, W1),
    _binomial(V2, W2, U2, Z2),
    _binomial(U1, Z2),
    _binomial(U2, Z1),
    _binomial(U2, Z2),
)


@dataclass(frozen=True)
class ChartIdeal:
    ideal: Ideal
    # пары (показатели λ₁, λ₂, μ₁, μ₂; коэффициент) для всех 9 слотов бистепени (2, 2)
    coefficients: tuple[tuple[tuple[int, ...], MultiPoly], ...]

    @property
    def generators(self) -> tuple[MultiPoly, ...]:
        return self.ideal.generators


@dataclass(frozen=True)
class ChartComponent:
    zero_variables: tuple[str, ...]
    dimension: int
    binomial: MultiPoly | None
    line_in_coordinate_plane: bool


@dataclass(frozen=True)
class ClaimDimension:
    dimension: int
    oracle_dimension: int
    claimed: int
    components: tuple[ChartComponent, ...]
    note: str

    @property
    def matches_claim(self) -> bool:
        return self.dimension == self.claimed


def chart_product_forms() -> tuple[MultiPoly, ...]:
    """(λ₁μ₁ : λ₂μ₂ : (λ₁u₁+λ₂u₂)(μ₁z₁+μ₂z₂) : (λ₁v₁+λ₂v₂)(μ₁w₁+μ₂w₂)) в 12 переменных"""
    def var(i: int) -> MultiPoly:
        return MultiPoly.var(12, i)

    l1, l2, m1, m2 = var(LAMBDA1), var(LAMBDA2), var(MU1), var(MU2)
    return (
        l1 * m1,
        l2 * m2,
        (l1 * var(U1) + l2 * var(U2)) * (m1 * var(Z1) + m2 * var(Z2)),
        (l1 * var(V1) + l2 * var(V2)) * (m1 * var(W1) + m2 * var(W2)),
    )


def claim_ideal() -> ChartIdeal:
    """Коэффициенты x₀x₃ − x₁x₂ на произведении прямых карты"""
    x0, x1, x2, x3 = chart_product_forms()
    expansion = x0 * x3 - x1 * x2
    slots: dict[tuple[int, ...], dict] = {}
    for exp, coef in expansion.terms.items():
        key = exp[8:]
        slots.setdefault(key, {})[exp[:8]] = coef
    keys = [(a, 2 - a, c, 2 - c) for a in (2, 1, 0) for c in (2, 1, 0)]
    coefficients = tuple((key, MultiPoly(8, slots.get(key, {}))) for key in keys)
    generators = tuple(c for _, c in coefficients if not c.is_zero())
    logger.info(f"Chart expansion has {len(generators)} nonzero coefficients out of {len(keys)}")
    return ChartIdeal(Ideal(8, generators), coefficients)


def chart_substitution(ideal: Ideal, values: dict[int, Fraction]) -> list[MultiPoly]:
    """Образующие после подстановки карты одной из прямых"""
    restricted = [g.restrict(values) for g in ideal.generators]
    return [g.normalized() for g in restricted if not g.is_zero()]


def _outside_domain(zeros: set[int]) -> bool:
    # L ⊂ H₂ ⇔ u = 0, L ⊂ H₃ ⇔ v = 0; так же для R с z, w
    pairs = ({U1, U2}, {V1, V2}, {Z1, Z2}, {W1, W2})
    return any(p <= zeros for p in pairs)


def _vanishes_or_equals(equation: MultiPoly, zeros: set[int], binomial: MultiPoly | None) -> bool:
    restricted = equation.restrict({i: 0 for i in zeros}).normalized()
    return restricted.is_zero() or restricted == binomial


def zero_pattern_components(ideal: Ideal) -> list[ChartComponent]:
    """Страты по точному множеству нулей координат; неприводимые замыкания максимальных страт"""
    nvars = ideal.nvars
    strata: list[tuple[set[int], int, MultiPoly | None]] = []
    for size in range(nvars + 1):
        for subset in combinations(range(nvars), size):
            zeros = set(subset)
            restricted = {g.restrict({i: 0 for i in zeros}).normalized() for g in ideal.generators}
            restricted.discard(MultiPoly.zero(nvars))
            if any(len(g.terms) == 1 for g in restricted):
                continue
            if len(restricted) > 1:
                raise ValueError(f"Zero pattern {sorted(zeros)} leaves several binomials; oracle does not apply")
            binomial = next(iter(restricted), None)
            strata.append((zeros, nvars - size - (1 if binomial is not None else 0), binomial))

    components = []
    for zeros, dim, binomial in strata:
        # страта лежит в замыкании большей страты, если та задаётся меньшим набором нулей и её уравнение обращается
        covered = any(
            other < zeros and other_dim > dim
            and (other_binomial is None or _vanishes_or_equals(other_binomial, zeros, binomial))
            for other, other_dim, other_binomial in strata
        )
        if not covered:
            names = tuple(CHART_VARS[i] for i in sorted(zeros)) if nvars == 8 else tuple(str(i) for i in sorted(zeros))
            components.append(ChartComponent(names, dim, binomial, _outside_domain(zeros)))
    return components


def claim_dimension(engine: GroebnerEngine, chart: ChartIdeal | None = None) -> ClaimDimension:
    """Размерность множества нулей карты: базис Грёбнера и перебор нулевых страт"""
    chart = chart or claim_ideal()
    dimension = engine.ideal_dimension(chart.ideal)
    components = zero_pattern_components(chart.ideal)
    oracle = max(c.dimension for c in components)
    top = [c for c in components if c.dimension == dimension]
    outside = all(c.line_in_coordinate_plane for c in top)
    note = (
        f"computed dimension {dimension}, claimed {CLAIMED_DIMENSION}; "
        f"{len(top)} top-dimensional components, "
        + ("each with a line inside a coordinate plane" if outside else "some with both lines off the coordinate planes")
    )
    logger.info(f"Chart ideal dimension {dimension}, oracle {oracle}")
    return ClaimDimension(dimension, oracle, CLAIMED_DIMENSION, tuple(components), note)


def compare_with_printed(chart: ChartIdeal) -> dict[str, list[MultiPoly]]:
    """Различия вычисленных и напечатанных образующих (с точностью до знака)"""
    computed = {g.normalized() for g in chart.generators}
    printed = {g.normalized() for g in PRINTED_CLAIM_GENERATORS}
    return {
        "only_computed": sorted(computed - printed, key=lambda g: g.format(CHART_VARS)),
        "only_printed": sorted(printed - computed, key=lambda g: g.format(CHART_VARS)),
    }


def segre_pair() -> tuple[ParamCurve, ParamCurve]:
    left = ParamCurve.from_line(line_from_points(*SEGRE_LEFT))
    right = ParamCurve.from_line(line_from_points(*SEGRE_RIGHT))
    return left, right


def torus_orbit_check(rng: random.Random, samples: int = 50) -> int:
    """Число ψ, для которых ψ(L₀) ⋆ ψ⁻¹(R₀) - та же квадрика Сегре"""
    left, right = segre_pair()
    passed = sum(
        1 for _ in range(samples)
        if torus_invariance_check(left, right, DiagonalAuto.sample(rng), rng=rng)
    )
    logger.info(f"Torus orbit check: {passed}/{samples}")
    return passed
