import argparse
import logging
import random

from models import geometry
from models.results import AnalyzeResult, ProductResult, ReconstructResult, SCLOutput, SurfaceResult, SurfaceSection
from services.errors import PlaneComponentError
from services.groebner import GroebnerEngine
from services.hadamard_product import implicitize, implicitize_by_elimination, morphism_check
from services.identify import build_system, reconstruct
from services.quadric_lab import adjugate_diagonal, in_closure_Y, scl, smoothness
from services.surface_lab import is_cone_with_vertex, section, section_is_singular, singular_locus_dimension
from utils import codec
from utils.router import Router, argument

logger = logging.getLogger(__name__)
router = Router()


@router.command(
    "product",
    arguments=[
        argument("--c1", required=True, help="прямая или коника (JSON или @path)"),
        argument("--c2", required=True, help="прямая или коника (JSON или @path)"),
        argument("--oracle", choices=["none", "gb"], default="none"),
    ],
)
def cmd_product(args: argparse.Namespace, rng: random.Random, engine: GroebnerEngine) -> ProductResult:
    """Произведение Адамара двух кривых: тип образа и неявное уравнение"""
    c1, c2 = codec.curve_from_json(args.c1), codec.curve_from_json(args.c2)
    logger.info(f"Product of curves of degrees {c1.degree} and {c2.degree}")
    product = implicitize(c1, c2, cap=args.cap, rng=rng)
    morphism = morphism_check(c1, c2)
    result = ProductResult(
        kind=product.kind.value,
        image_dimension=product.image_dimension,
        kernel_dimensions=list(product.kernel_dimensions),
        point=codec.point_to_model(product.point),
        plane=codec.poly_to_model(product.plane) if product.plane is not None else None,
        surface=codec.poly_to_model(product.surface.equation) if product.surface is not None else None,
        degree=product.surface.degree if product.surface is not None else None,
        morphism=morphism.is_morphism,
        base_point_patterns=[list(w) for w in morphism.witnesses],
    )
    if args.oracle == "gb":
        eliminated = implicitize_by_elimination(c1, c2, engine)
        result.elimination = [codec.poly_to_model(g) for g in eliminated]
        result.oracle_agrees = product.equation is not None and eliminated == [product.equation]
        logger.info(f"Elimination oracle agrees: {result.oracle_agrees}")
    return result


@router.command("analyze", arguments=[argument("--quadric", required=True)])
def cmd_analyze(args: argparse.Namespace) -> AnalyzeResult:
    """Гладкость, диагональ присоединённой матрицы и SCL квадрики"""
    quadric = codec.quadric_from_model(codec.parse_model(geometry.Quadric, args.quadric))
    shape = smoothness(quadric)
    logger.info(f"Quadric {quadric.equation.format()} is {shape.kind.value}")
    return AnalyzeResult(
        equation=codec.poly_to_model(quadric.equation),
        smoothness=shape.kind.value,
        rank=shape.rank,
        vertex=codec.point_to_model(shape.vertex),
        adjugate_diagonal=list(adjugate_diagonal(quadric)),
        in_closure_Y=in_closure_Y(quadric),
        scl=codec.scl_to_model(scl(quadric)),
    )


@router.command("scl", arguments=[argument("--quadric", required=True)])
def cmd_scl(args: argparse.Namespace) -> SCLOutput:
    """Особые точки сечений квадрики координатными плоскостями"""
    quadric = codec.quadric_from_model(codec.parse_model(geometry.Quadric, args.quadric))
    return codec.scl_to_model(scl(quadric))


@router.command("reconstruct", arguments=[argument("--centers", required=True)])
def cmd_reconstruct(args: argparse.Namespace) -> ReconstructResult:
    """Восстановление квадрики по четырём центрам"""
    model = codec.parse_model(geometry.Centers, args.centers)
    centers = [codec.point_from_model(c) for c in model.centers]
    logger.info(f"Reconstructing from centers {[str(c) for c in centers]}")
    system = build_system(centers)
    quadric = reconstruct(centers)
    return ReconstructResult(
        quadric=codec.poly_to_model(quadric.equation),
        coefficients=list(quadric.coefficients),
        rank=system.rank,
        kernel_dimension=len(system.kernel),
    )


@router.command(
    "surface",
    arguments=[
        argument("--equation", required=True),
        argument("--vertex", default=None, help="кандидат в вершины конуса, JSON-список из 4 рациональных"),
    ],
)
def cmd_surface(args: argparse.Namespace, engine: GroebnerEngine) -> SurfaceResult:
    """Особое множество, сечения и проверка конуса для поверхности"""
    model = codec.parse_model(geometry.Surface, args.equation)
    surface = codec.checked_surface(model.equation)
    logger.info(f"Analyzing surface {surface.equation.format()} of degree {surface.degree}")
    sections = []
    plane_components = []
    for i in range(4):
        try:
            curve = section(surface, i)
        except PlaneComponentError:
            logger.info(f"Plane H{i} is a component of the surface")
            plane_components.append(i)
            continue
        sections.append(SurfaceSection(
            plane=i,
            degree=curve.degree,
            equation=curve.equation.format([f"x{j}" for j in curve.remaining]),
            singular=section_is_singular(curve, engine),
        ))
    if args.vertex is not None:
        model.vertex = codec.parse_point(args.vertex)
    vertex = codec.point_from_model(model.vertex) if model.vertex is not None else None
    return SurfaceResult(
        equation=codec.poly_to_model(surface.equation),
        degree=surface.degree,
        singular_locus_dimension=singular_locus_dimension(surface, engine),
        sections=sections,
        plane_components=plane_components,
        vertex=codec.point_to_model(vertex),
        is_cone=is_cone_with_vertex(surface, vertex) if vertex is not None else None,
    )
