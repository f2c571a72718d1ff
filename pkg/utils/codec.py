import json
import logging
from pathlib import Path
from typing import Sequence, TypeVar

from pydantic import BaseModel, TypeAdapter, ValidationError

from models import geometry
from models.results import SCLOutput, SectionResult
from services.errors import HadamardError, MalformedInputError
from services.exact_linalg import format_rational
from services.hadamard_product import SurfaceImplicit
from services.groebner import Ideal
from services.multipoly import MonomialOrder, MultiPoly
from services.projgeom import LineP3, ParamCurve, ProjPoint
from services.quadric_lab import Quadric, SCLResult, quadric_from_poly

logger = logging.getLogger(__name__)

M = TypeVar("M", bound=BaseModel)


def load_json(argument: str) -> object:
    """Разбор inline JSON или ссылки @path"""
    if argument.startswith("@"):
        path = Path(argument[1:])
        logger.info(f"Reading JSON from {path}")
        try:
            argument = path.read_text(encoding="utf-8")
        except OSError as e:
            raise MalformedInputError(f"Cannot read {path}: {e}") from e
    try:
        return json.loads(argument)
    except json.JSONDecodeError as e:
        raise MalformedInputError(f"Invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}") from e


def parse_model(model: type[M], argument: str) -> M:
    return _validate(model, load_json(argument))


def _checked(build, what: str):
    try:
        return build()
    except MalformedInputError:
        raise
    except (HadamardError, ValueError) as e:
        raise MalformedInputError(f"Invalid {what}: {e}") from e


# --- модели → вычислительные объекты ---

def point_from_model(coords: Sequence) -> ProjPoint:
    return _checked(lambda: ProjPoint(tuple(coords)), "point")


def poly_from_model(model: geometry.Poly) -> MultiPoly:
    return _checked(lambda: MultiPoly(model.vars, {tuple(t.exp): t.coef for t in model.terms}), "polynomial")


def line_from_model(model: geometry.Line) -> LineP3:
    if model.points is not None:
        return _checked(lambda: LineP3.from_span(model.points), "line")
    return _checked(lambda: LineP3.from_pluecker(model.pluecker), "line")


def conic_from_model(model: geometry.Conic) -> ParamCurve:
    if model.forms is not None:
        return _checked(lambda: ParamCurve(2, tuple(poly_from_model(f) for f in model.forms)), "conic")
    return _checked(lambda: ParamCurve.conic(model.through, model.B, model.C), "conic")


def curve_from_json(argument: str) -> ParamCurve:
    """Прямая ({"points"} / {"pluecker"}) или коника ({"through", "B", "C"} / {"forms"})"""
    data = load_json(argument)
    if isinstance(data, dict) and ("points" in data or "pluecker" in data):
        line = line_from_model(_validate(geometry.Line, data))
        return ParamCurve.from_line(line)
    return conic_from_model(_validate(geometry.Conic, data))


POINT_ADAPTER = TypeAdapter(geometry.Point)


def parse_point(argument: str) -> list:
    """Точка P³ как JSON-список из четырёх рациональных"""
    try:
        return POINT_ADAPTER.validate_python(load_json(argument))
    except ValidationError as e:
        raise MalformedInputError(f"Point: {e.errors()[0]['msg']}") from e


def _validate(model: type[M], data: object) -> M:
    try:
        return model.model_validate(data)
    except ValidationError as e:
        errors = "; ".join(f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors())
        raise MalformedInputError(f"{model.__name__}: {errors}") from e


def ideal_from_model(model: geometry.IdealInput) -> tuple[Ideal, MonomialOrder]:
    generators = tuple(poly_from_model(g) for g in model.generators)
    order = _checked(lambda: MonomialOrder.parse(model.order), "monomial order")
    return _checked(lambda: Ideal(model.vars, generators), "ideal"), order


def checked_surface(model: geometry.Poly) -> SurfaceImplicit:
    equation = poly_from_model(model)
    return _checked(lambda: SurfaceImplicit(equation), "surface")


def quadric_from_model(model: geometry.Quadric) -> Quadric:
    if model.coefficients is not None:
        return _checked(lambda: Quadric.from_coefficients(model.coefficients), "quadric")
    return _checked(lambda: quadric_from_poly(poly_from_model(model.equation)), "quadric")


# --- вычислительные объекты → модели ---

def poly_to_model(p: MultiPoly, names: Sequence[str] | None = None) -> geometry.Poly:
    terms = [geometry.Term(exp=list(e), coef=c) for e, c in p.sorted_terms()]
    return geometry.Poly(vars=p.nvars, terms=terms, text=p.format(names))


def point_to_model(p: ProjPoint | None) -> list | None:
    return list(p.coords) if p is not None else None


def rationals(values) -> list[str]:
    return [format_rational(v) for v in values]


def scl_to_model(result: SCLResult) -> SCLOutput:
    return SCLOutput(
        sections=[
            SectionResult(plane=s.plane, status=s.status.value, center=point_to_model(s.center))
            for s in result.sections
        ],
        all_reducible=result.all_reducible,
        centers_distinct=result.centers_distinct,
        centers_off_other_planes=result.centers_off_other_planes,
        centers_coplanar=result.centers_coplanar,
    )
