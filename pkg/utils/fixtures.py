import logging
import random
from fractions import Fraction

from services.errors import DegenerateSampleError, HadamardError
from services.exact_linalg import RatMatrix, rank
from services.hadamard_product import morphism_check
from services.projgeom import LineP3, ParamCurve, ProjPoint, conic_through

logger = logging.getLogger(__name__)


def random_vector(rng: random.Random, bound: int = 9, nonzero_entries: bool = False) -> tuple[Fraction, ...]:
    while True:
        values = tuple(Fraction(rng.randint(-bound, bound)) for _ in range(4))
        if nonzero_entries and not all(values):
            continue
        if any(values):
            return values


def random_point(rng: random.Random, bound: int = 9, nonzero_entries: bool = False) -> ProjPoint:
    return ProjPoint(random_vector(rng, bound, nonzero_entries))


def random_line(rng: random.Random, bound: int = 9, retries: int = 100) -> LineP3:
    for _ in range(retries):
        a, b = random_vector(rng, bound), random_vector(rng, bound)
        if rank(RatMatrix.from_rows([a, b])) == 2:
            return LineP3.from_span([a, b])
    raise DegenerateSampleError(f"No line after {retries} draws")


def generic_line(rng: random.Random, bound: int = 9, retries: int = 100) -> LineP3:
    """Прямая, не пересекающая координатные прямые (все координаты Плюккера ненулевые)"""
    for _ in range(retries):
        line = random_line(rng, bound, retries)
        if all(line.pluecker):
            return line
    raise DegenerateSampleError(f"No generic line after {retries} draws")


def line_through(point: ProjPoint, rng: random.Random, bound: int = 9, retries: int = 100) -> LineP3:
    for _ in range(retries):
        other = random_vector(rng, bound)
        if rank(RatMatrix.from_rows([point.coords, other])) == 2:
            return LineP3.from_span([point.coords, other])
    raise DegenerateSampleError(f"No line through {point} after {retries} draws")


def generic_line_pair(rng: random.Random, bound: int = 9, retries: int = 100) -> tuple[LineP3, LineP3]:
    """Пара общих прямых, для которой произведение Адамара - морфизм"""
    for attempt in range(retries):
        left, right = generic_line(rng, bound, retries), generic_line(rng, bound, retries)
        if left == right:
            continue
        if morphism_check(ParamCurve.from_line(left), ParamCurve.from_line(right)).is_morphism:
            return left, right
        logger.debug(f"Line pair {attempt} has base points")
    raise DegenerateSampleError(f"No generic line pair after {retries} draws")


def line_conic_pair(
    line_point: ProjPoint,
    conic_point: ProjPoint,
    rng: random.Random,
    bound: int = 9,
    retries: int = 100,
) -> tuple[ParamCurve, ParamCurve]:
    """Случайная прямая через line_point и коника через conic_point"""
    for _ in range(retries):
        try:
            line = ParamCurve.from_line(line_through(line_point, rng, bound, retries))
            conic = conic_through(conic_point, rng, bound, retries)
        except HadamardError:
            continue
        return line, conic
    raise DegenerateSampleError(f"No line/conic pair after {retries} draws")


def generic_line_conic_morphism(rng: random.Random, bound: int = 9, retries: int = 100) -> tuple[ParamCurve, ParamCurve]:
    """Общая прямая и коника без базисных точек произведения"""
    for _ in range(retries):
        line = ParamCurve.from_line(generic_line(rng, bound, retries))
        conic = conic_through(random_point(rng, bound, nonzero_entries=True), rng, bound, retries)
        if morphism_check(line, conic).is_morphism:
            return line, conic
    raise DegenerateSampleError(f"No line/conic morphism after {retries} draws")
