import logging
import random
from dataclasses import dataclass, field
from typing import Any, Callable

from models.report import CheckStatus, VerifyCheck, VerifyReport
from services import fiber_chart, identify
from services.exact_linalg import det_bareiss
from services.groebner import GroebnerEngine, Ideal
from services.hadamard_product import (
    ImageKind,
    implicitize,
    implicitize_by_elimination,
    injectivity_check,
    morphism_check,
    plane_family_check,
    power_dimension,
    square_is_planar,
    torus_invariance_check,
)
from services.multipoly import MultiPoly
from services.projgeom import DiagonalAuto, LineP3, ParamCurve, ProjPoint, point_star_line, xl_membership
from services.quadric_lab import (
    adjugate_diagonal,
    adjugate_jacobian_rank,
    coordinate_crossings,
    quadric_from_poly,
    scl,
    scl_from_lines,
    section_lines,
    smoothness,
)
from services.surface_lab import (
    candidate_vertices,
    is_cone_with_vertex,
    line_in_surface,
    section,
    section_is_singular,
    singular_locus_dimension,
)
from utils.fixtures import generic_line, generic_line_conic_morphism, generic_line_pair, line_conic_pair, random_point

logger = logging.getLogger(__name__)

SEGRE = MultiPoly(4, {(1, 0, 0, 1): 1, (0, 1, 1, 0): -1}).normalized()
FAMILY_PARAMETERS = (2, 3)
# выборки, на которых проверяются все 66 миноров 10×10
MINOR_SAMPLES = 10


@dataclass
class CheckContext:
    seed: int
    samples: int
    engine: GroebnerEngine
    survey_bound: int = 100


@dataclass
class Outcome:
    ok: bool
    inputs: dict[str, Any] = field(default_factory=dict)
    expected: Any = None
    computed: Any = None
    note: str | None = None
    discrepancy: bool = False


CheckFn = Callable[[CheckContext, random.Random], Outcome]


@dataclass
class RegisteredCheck:
    name: str
    anchor: str
    run: CheckFn


CHECKS: list[RegisteredCheck] = []


def check(name: str, anchor: str):
    """Регистрация проверки в отчёте verify-paper"""
    def decorator(fn: CheckFn) -> CheckFn:
        CHECKS.append(RegisteredCheck(name, anchor, fn))
        return fn

    return decorator


def _line_text(line: LineP3) -> str:
    a, b = line.points()
    return f"<{a}, {b}>"


def _curve_text(curve: ParamCurve) -> str:
    return ", ".join(f.format(["s", "t"]) for f in curve.forms)


def _equation_text(product) -> str | None:
    return product.equation.format() if product.equation is not None else None


# --- пары прямых ---

@check("segre-implicitization", "the Hadamard product of two lines is the Segre quadric")
def check_segre(ctx: CheckContext, rng: random.Random) -> Outcome:
    left, right = fiber_chart.segre_pair()
    product = implicitize(left, right, rng=rng)
    oracle = implicitize_by_elimination(left, right, ctx.engine)
    ok = (
        product.kind == ImageKind.SURFACE
        and product.equation == SEGRE
        and oracle == [SEGRE]
        and morphism_check(left, right).is_morphism
    )
    return Outcome(
        ok,
        inputs={"left": _curve_text(left), "right": _curve_text(right)},
        expected=SEGRE.format(),
        computed={"kernel_method": _equation_text(product), "elimination": [g.format() for g in oracle]},
    )


def _line_pair_products(ctx: CheckContext, rng: random.Random):
    for _ in range(ctx.samples):
        left, right = generic_line_pair(rng)
        product = implicitize(ParamCurve.from_line(left), ParamCurve.from_line(right), rng=rng)
        yield left, right, product


@check("smooth-tangent-sample", "smooth quadric tangent to the four coordinate planes, adjugate with null diagonal")
def check_smooth_tangent(ctx: CheckContext, rng: random.Random) -> Outcome:
    failures = []
    pairs = []
    for left, right, product in _line_pair_products(ctx, rng):
        pair = [_line_text(left), _line_text(right)]
        pairs.append(pair)
        if product.kind != ImageKind.SURFACE or product.surface.degree != 2:
            failures.append(f"{pair}: {product.kind.value}")
            continue
        quadric = quadric_from_poly(product.surface.equation)
        if det_bareiss(quadric.gram) == 0 or any(adjugate_diagonal(quadric)):
            failures.append(f"{pair}: {product.surface.equation.format()}")
    return Outcome(
        not failures,
        inputs={"samples": ctx.samples, "pairs": pairs},
        expected="degree 2, det != 0, adjugate diagonal (0, 0, 0, 0)",
        computed={"failures": failures},
    )


@check("codimension-Y", "quadrics with null-diagonal inverse form a 5-dimensional family")
def check_codimension(ctx: CheckContext, rng: random.Random) -> Outcome:
    found = adjugate_jacobian_rank(quadric_from_poly(SEGRE))
    return Outcome(
        found == 4,
        inputs={"point": SEGRE.format()},
        expected={"jacobian_rank": 4, "dimension": 5},
        computed={"jacobian_rank": found, "dimension": 9 - found},
    )


@check("scl-roundtrip", "a quadric of the family is determined by its singular coordinate locus")
def check_scl_roundtrip(ctx: CheckContext, rng: random.Random) -> Outcome:
    failures = []
    pairs = []
    for left, right, product in _line_pair_products(ctx, rng):
        pair = [_line_text(left), _line_text(right)]
        pairs.append(pair)
        quadric = quadric_from_poly(product.surface.equation)
        result = scl(quadric)
        if not (result.all_reducible and result.centers_distinct):
            failures.append(f"{pair}: centers {[str(c) for c in result.centers]}")
            continue
        if result.centers != scl_from_lines(left, right):
            failures.append(f"{pair}: centers differ from the products of the plane meets")
        system = identify.build_system(result.centers)
        if system.rank != 9:
            failures.append(f"{pair}: rank {system.rank}")
            continue
        if identify.reconstruct(result.centers) != quadric.normalized():
            failures.append(f"{pair}: reconstruction differs")
        for lines in section_lines(left, right):
            if not all(line_in_surface(product.surface, line) for line in lines):
                failures.append(f"{pair}: section line off the surface")
                break
    return Outcome(
        not failures,
        inputs={"samples": ctx.samples, "pairs": pairs},
        expected="4 distinct centers, rank 9, reconstruction equals the quadric",
        computed={"failures": failures},
    )


@check("scl-coordinate-crossings", "singular coordinate locus read per coordinate plane")
def check_coordinate_crossings(ctx: CheckContext, rng: random.Random) -> Outcome:
    left, right = generic_line_pair(rng)
    crossings = coordinate_crossings(left, right)
    centers = scl_from_lines(left, right)
    return Outcome(
        len(crossings) == 12 and not set(crossings) & set(centers),
        inputs={"left": _line_text(left), "right": _line_text(right)},
        expected="12 crossings on the coordinate lines, none of them a center",
        computed={"centers": [str(c) for c in centers], "crossings": [str(c) for c in crossings]},
        note="the union of the sections is also singular at the crossings; they are reported beside the centers",
    )


@check("survey-never-full-rank", "the 12x10 reconstruction matrix is never of full rank")
def check_survey(ctx: CheckContext, rng: random.Random) -> Outcome:
    report = identify.degeneracy_survey(
        ctx.samples, rng, ctx.seed, bound=ctx.survey_bound, minor_samples=min(ctx.samples, MINOR_SAMPLES)
    )
    ok = (
        report.generic_ranks == {9: report.generic_samples}
        and all(c.max_rank <= 8 for c in report.components)
        and report.full_rank_count == 0
        and report.minor_checks > 0
        and report.nonvanishing_minors == 0
    )
    return Outcome(
        ok,
        inputs={"samples": ctx.samples, "range": ctx.survey_bound},
        expected="rank 9 for nonzero parameters, at most 8 on the 14 components, never 10; all 66 maximal minors vanish",
        computed={
            "generic_ranks": {str(k): v for k, v in report.generic_ranks.items()},
            "components": {
                ",".join(c.variables): {str(k): v for k, v in c.ranks.items()} for c in report.components
            },
            "full_rank": report.full_rank_count,
            "minor_checks": report.minor_checks,
            "nonvanishing_minors": report.nonvanishing_minors,
        },
        note=report.note,
    )


@check("coplanar-family", "quadrics with coplanar singular coordinate locus")
def check_coplanar(ctx: CheckContext, rng: random.Random) -> Outcome:
    a, b = MultiPoly.var(2, 0), MultiPoly.var(2, 1)
    printed = identify.printed_coplanarity_determinant()
    actual = identify.actual_coplanarity_determinant()
    printed_ok = printed.normalized() == (a * (a.scale(3) - b.scale(2))).normalized()
    actual_ok = actual.normalized() == ((a - b.scale(2)) ** 2).normalized()

    centers = identify.family_centers(*FAMILY_PARAMETERS)
    quadric = identify.reconstruct(centers)
    left, right = identify.family_lines(*FAMILY_PARAMETERS)
    product = implicitize(ParamCurve.from_line(left), ParamCurve.from_line(right), rng=rng)
    expected_quadric = identify.PRINTED_B3_QUADRIC.normalized()
    reconstruct_ok = quadric.equation.normalized() == expected_quadric and product.equation == expected_quadric
    coplanar = scl(quadric).centers_coplanar
    names = ["a", "b"]
    differs = printed.normalized() != actual.normalized()
    pa, pb = FAMILY_PARAMETERS
    corrected_row = scl_from_lines(left, right)[3] == ProjPoint.of(2, pb, pa - pb, 0)
    return Outcome(
        printed_ok and actual_ok and reconstruct_ok and corrected_row and coplanar is False,
        inputs={"a": FAMILY_PARAMETERS[0], "b": FAMILY_PARAMETERS[1], "centers": [str(c) for c in centers]},
        expected={"printed_determinant": "a*(3*a - 2*b)", "quadric": expected_quadric.format()},
        computed={
            "printed_determinant": printed.format(names),
            "actual_determinant": actual.format(names),
            "reconstructed": quadric.equation.format(),
            "implicitized": _equation_text(product),
            "centers_coplanar": coplanar,
            "corrected_row_is_center": corrected_row,
        },
        note=(
            f"displayed last row (2, b, b-a, 0) gives {printed.format(names)}; corrected row (2, b, a-b, 0), "
            f"the actual center on H3, gives {actual.format(names)}; "
            f"centers at {FAMILY_PARAMETERS} coplanar: {coplanar}"
        ),
        discrepancy=differs,
    )


# --- прямая ⋆ коника ---

@check("cone-example", "a line through (1:0:0:0) times a conic through (0:1:1:1) is a quadratic cone")
def check_cone(ctx: CheckContext, rng: random.Random) -> Outcome:
    vertex = ProjPoint.coordinate(0)
    line, conic = line_conic_pair(vertex, ProjPoint.of(0, 1, 1, 1), rng)
    product = implicitize(line, conic, rng=rng)
    computed: dict[str, Any] = {"kind": product.kind.value, "equation": _equation_text(product)}
    ok = product.kind == ImageKind.SURFACE and product.surface.degree == 2
    if ok:
        shape = smoothness(quadric_from_poly(product.surface.equation))
        cone = is_cone_with_vertex(product.surface, vertex)
        computed.update({"gram_rank": shape.rank, "vertex": str(shape.vertex), "cone_at_vertex": cone})
        ok = shape.rank == 3 and shape.vertex == vertex and cone
    return Outcome(
        ok,
        inputs={"line": _curve_text(line), "conic": _curve_text(conic)},
        expected={"degree": 2, "gram_rank": 3, "vertex": str(vertex), "cone_at_vertex": True},
        computed=computed,
    )


def _sections_singular(surface, engine: GroebnerEngine) -> list[bool]:
    return [section_is_singular(section(surface, i), engine) for i in range(4)]


@check("cubic-example", "a cubic product surface singular along a line")
def check_cubic(ctx: CheckContext, rng: random.Random) -> Outcome:
    line, conic = line_conic_pair(ProjPoint.of(0, 0, 1, 1), ProjPoint.of(1, 1, 0, 0), rng)
    product = implicitize(line, conic, rng=rng)
    computed: dict[str, Any] = {"kind": product.kind.value, "equation": _equation_text(product)}
    ok = product.kind == ImageKind.SURFACE and product.surface.degree == 3
    if ok:
        dimension = singular_locus_dimension(product.surface, ctx.engine)
        singular = _sections_singular(product.surface, ctx.engine)
        candidates = candidate_vertices(line, conic)
        cones = [str(p) for p in candidates if is_cone_with_vertex(product.surface, p)]
        computed.update({
            "singular_locus_dimension": dimension,
            "sections_singular": singular,
            "candidates": len(candidates),
            "cone_vertices": cones,
        })
        ok = dimension == 1 and all(singular) and not cones
    return Outcome(
        ok,
        inputs={"line": _curve_text(line), "conic": _curve_text(conic)},
        expected={"degree": 3, "singular_locus_dimension": 1, "sections_singular": [True] * 4, "cone_vertices": []},
        computed=computed,
    )


@check("generic-line-conic", "coordinate sections of a line-conic product are non-transversal")
def check_generic_line_conic(ctx: CheckContext, rng: random.Random) -> Outcome:
    line, conic = generic_line_conic_morphism(rng)
    product = implicitize(line, conic, rng=rng)
    computed: dict[str, Any] = {"kind": product.kind.value, "equation": _equation_text(product)}
    ok = product.kind == ImageKind.SURFACE
    if ok and product.surface.degree >= 3:
        dimension = singular_locus_dimension(product.surface, ctx.engine)
        singular = _sections_singular(product.surface, ctx.engine)
        cones = [str(p) for p in candidate_vertices(line, conic) if is_cone_with_vertex(product.surface, p)]
        computed.update({"singular_locus_dimension": dimension, "sections_singular": singular, "cone_vertices": cones})
        ok = dimension in (0, 1) and all(singular) and not cones
    return Outcome(
        ok,
        inputs={"line": _curve_text(line), "conic": _curve_text(conic)},
        expected={"sections_singular": [True] * 4, "cone_vertices": [], "singular_locus_dimension": "0 or 1"},
        computed=computed,
    )


# --- тор, семейство X_L, степени ---

@check("torus-stabilizer", "diagonal rescaling (psi X) * (psi^-1 Y) keeps the product")
def check_torus(ctx: CheckContext, rng: random.Random) -> Outcome:
    failures = []
    samples = max(ctx.samples // 2, 1)
    for _ in range(samples):
        left, right = generic_line_pair(rng)
        psi = DiagonalAuto.sample(rng)
        if not torus_invariance_check(ParamCurve.from_line(left), ParamCurve.from_line(right), psi, rng=rng):
            failures.append(f"{_line_text(left)}, {_line_text(right)}, psi={[str(e) for e in psi.entries]}")
    return Outcome(
        not failures,
        inputs={"samples": samples},
        expected="identical implicit equations",
        computed={"failures": failures},
    )


@check("xl-family", "Pluecker biquadratic equation of the lines p * L")
def check_xl_family(ctx: CheckContext, rng: random.Random) -> Outcome:
    line = generic_line(rng)
    curve = ParamCurve.from_line(line)
    failures = []
    points = []
    samples = max(ctx.samples // 2, 1)
    while len(points) < samples:
        p = random_point(rng, nonzero_entries=True)
        image = point_star_line(p, line)
        if not isinstance(image, LineP3):
            continue
        points.append(str(p))
        product = implicitize(curve, ParamCurve.from_line(image), rng=rng)
        if not xl_membership(line, image) or product.kind != ImageKind.PLANE:
            failures.append(f"{p}: {product.kind.value}")
    return Outcome(
        not failures,
        inputs={"line": _line_text(line), "points": points},
        expected="X_L equation vanishes on p * L, and L * (p * L) is a plane",
        computed={"failures": failures},
    )


@check("line-square-planar", "the Hadamard square of a line lies in a plane")
def check_line_square(ctx: CheckContext, rng: random.Random) -> Outcome:
    line = generic_line(rng)
    p = random_point(rng, nonzero_entries=True)
    planar = square_is_planar(line, rng)
    dimension = power_dimension(ParamCurve.from_line(line), 2, rng)
    family = plane_family_check(line, p, rng)
    return Outcome(
        planar and dimension == 2 and family,
        inputs={"line": _line_text(line), "p": str(p)},
        expected={"square_planar": True, "square_dimension": 2, "p_star_square": True},
        computed={"square_planar": planar, "square_dimension": dimension, "p_star_square": family},
    )


@check("injectivity", "the Hadamard map of two generic lines is injective")
def check_injectivity(ctx: CheckContext, rng: random.Random) -> Outcome:
    failures = []
    samples = max(ctx.samples // 5, 1)
    for _ in range(samples):
        left, right = generic_line_pair(rng)
        if not injectivity_check(ParamCurve.from_line(left), ParamCurve.from_line(right), rng):
            failures.append(f"{_line_text(left)}, {_line_text(right)}")
    return Outcome(
        not failures,
        inputs={"pairs": samples},
        expected="no two parameter pairs share an image point",
        computed={"failures": failures},
    )


# --- карта слоя и оракул исключения ---

@check("claim-chart", "chart equations of the fiber over the Segre quadric")
def check_claim(ctx: CheckContext, rng: random.Random) -> Outcome:
    chart = fiber_chart.claim_ideal()
    differences = fiber_chart.compare_with_printed(chart)
    result = fiber_chart.claim_dimension(ctx.engine, chart)
    printed = ctx.engine.ideal_dimension(Ideal(8, fiber_chart.PRINTED_CLAIM_GENERATORS))
    names = fiber_chart.CHART_VARS
    agrees = result.matches_claim and not differences["only_computed"] and not differences["only_printed"]
    return Outcome(
        result.dimension == result.oracle_dimension,
        inputs={"chart": list(names)},
        expected={"generators": [g.format(names) for g in fiber_chart.PRINTED_CLAIM_GENERATORS], "dimension": result.claimed},
        computed={
            "generators": [g.format(names) for g in chart.generators],
            "only_computed": [g.format(names) for g in differences["only_computed"]],
            "only_printed": [g.format(names) for g in differences["only_printed"]],
            "dimension": result.dimension,
            "oracle_dimension": result.oracle_dimension,
            "printed_generators_dimension": printed,
        },
        note=result.note,
        discrepancy=not agrees,
    )


@check("oracle-equivalence", "implicitization by the kernel method and by elimination agree")
def check_oracle(ctx: CheckContext, rng: random.Random) -> Outcome:
    failures = []
    samples = max(ctx.samples // 5, 1)
    for _ in range(samples):
        left, right = generic_line_pair(rng)
        c1, c2 = ParamCurve.from_line(left), ParamCurve.from_line(right)
        kernel = implicitize(c1, c2, rng=rng).equation
        eliminated = implicitize_by_elimination(c1, c2, ctx.engine)
        if eliminated != [kernel]:
            failures.append(f"{_line_text(left)}, {_line_text(right)}")
    return Outcome(
        not failures,
        inputs={"pairs": samples},
        expected="equal normalized equations",
        computed={"failures": failures},
    )


# --- запуск ---

def _status(outcome: Outcome) -> CheckStatus:
    if not outcome.ok:
        return CheckStatus.FAIL
    return CheckStatus.DISCREPANCY if outcome.discrepancy else CheckStatus.PASS


def check_seed(seed: int, name: str) -> int:
    """Детерминированный seed проверки, не зависящий от порядка запуска"""
    return random.Random(f"{seed}:{name}").randrange(2 ** 32)


def run_checks(ctx: CheckContext, only: str | None = None) -> VerifyReport:
    """Прогон зарегистрированных проверок; исключение проверки превращается в запись fail"""
    report = VerifyReport(seed=ctx.seed)
    for registered in CHECKS:
        if only and not registered.name.startswith(only):
            continue
        seed = check_seed(ctx.seed, registered.name)
        logger.info(f"Running check {registered.name} with seed {seed}")
        try:
            outcome = registered.run(ctx, random.Random(seed))
        except Exception as e:
            logger.error(f"Check {registered.name} raised {type(e).__name__}: {e}")
            outcome = Outcome(False, note=f"{type(e).__name__}: {e}")
        outcome.inputs = {"seed": seed, **outcome.inputs}
        report.checks.append(VerifyCheck(
            name=registered.name,
            anchor=registered.anchor,
            inputs=outcome.inputs,
            expected=outcome.expected,
            computed=outcome.computed,
            status=_status(outcome),
            note=outcome.note,
        ))
        logger.info(f"Check {registered.name}: {report.checks[-1].status.value}")
    return report
