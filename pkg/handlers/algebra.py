import argparse
import logging
import random

from models import geometry
from models.results import ComponentResult, ComponentSurvey, FiberResult, GroebnerResult, SurveyResult
from services import fiber_chart
from services.groebner import GroebnerEngine
from services.identify import degeneracy_survey
from settings import settings
from utils import codec
from utils.router import Router, argument

logger = logging.getLogger(__name__)
router = Router()


@router.command("gb", arguments=[argument("--ideal", required=True)])
def cmd_gb(args: argparse.Namespace, engine: GroebnerEngine) -> GroebnerResult:
    """Приведённый базис Грёбнера и размерность идеала"""
    ideal, order = codec.ideal_from_model(codec.parse_model(geometry.IdealInput, args.ideal))
    logger.info(f"Groebner basis of {len(ideal.generators)} generators in {ideal.nvars} variables, order {order}")
    basis = engine.buchberger(ideal, order)
    return GroebnerResult(
        order=str(order),
        basis=[codec.poly_to_model(g) for g in basis.basis],
        dimension=engine.ideal_dimension(ideal),
    )


@router.command("fiber")
def cmd_fiber(args: argparse.Namespace, rng: random.Random, engine: GroebnerEngine) -> FiberResult:
    """Уравнения карты слоя над квадрикой Сегре и их размерность"""
    names = fiber_chart.CHART_VARS
    chart = fiber_chart.claim_ideal()
    differences = fiber_chart.compare_with_printed(chart)
    claim = fiber_chart.claim_dimension(engine, chart)
    samples = args.samples or 50
    passed = fiber_chart.torus_orbit_check(rng, samples)
    if not claim.matches_claim:
        logger.warning(f"Chart dimension {claim.dimension} differs from the claimed {claim.claimed}")
    return FiberResult(
        generators=[codec.poly_to_model(g, names) for g in chart.generators],
        printed_generators=[codec.poly_to_model(g, names) for g in fiber_chart.PRINTED_CLAIM_GENERATORS],
        only_computed=[g.format(names) for g in differences["only_computed"]],
        only_printed=[g.format(names) for g in differences["only_printed"]],
        dimension=claim.dimension,
        oracle_dimension=claim.oracle_dimension,
        claimed_dimension=claim.claimed,
        components=[
            ComponentResult(
                zero_variables=list(c.zero_variables),
                dimension=c.dimension,
                binomial=c.binomial.format(names) if c.binomial is not None else None,
                line_in_coordinate_plane=c.line_in_coordinate_plane,
            )
            for c in claim.components
        ],
        discrepancy_note=claim.note,
        torus_orbit_check={"passed": passed, "samples": samples},
    )


@router.command(
    "survey",
    arguments=[
        argument("--component-samples", type=int, default=20),
        argument("--skip-minors", action="store_true"),
    ],
)
def cmd_survey(args: argparse.Namespace, rng: random.Random, seed: int) -> SurveyResult:
    """Ранги матрицы 12×10 в общем положении и на компонентах вырождения"""
    report = degeneracy_survey(
        args.samples or 100,
        rng,
        seed,
        bound=settings.survey_bound,
        component_samples=args.component_samples,
        minor_samples=0 if args.skip_minors else None,
    )
    return SurveyResult(
        seed=report.seed,
        parameter_range=report.parameter_range,
        generic_samples=report.generic_samples,
        generic_ranks=report.generic_ranks,
        components=[
            ComponentSurvey(variables=list(c.variables), samples=c.samples, ranks=c.ranks)
            for c in report.components
        ],
        full_rank_count=report.full_rank_count,
        minor_checks=report.minor_checks,
        nonvanishing_minors=report.nonvanishing_minors,
        note=report.note,
    )
