from fractions import Fraction
from typing import Annotated

from pydantic import BaseModel, ConfigDict, Field, PlainSerializer, PlainValidator, model_validator

from services.exact_linalg import format_rational


def parse_rational(value) -> Fraction:
    """Рациональное число из int или строки "p/q" """
    if isinstance(value, bool):
        raise ValueError(f"Not a rational number: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str):
        raise ValueError(f"Rationals are written as \"p/q\" strings or integers, got {value!r}")
    text = value.strip()
    num, _, den = text.partition("/")
    try:
        numerator = int(num)
        denominator = int(den) if den else 1
    except ValueError:
        raise ValueError(f"Not a rational number: {value!r}") from None
    if denominator == 0:
        raise ValueError(f"Zero denominator in {value!r}")
    return Fraction(numerator, denominator)


Rational = Annotated[Fraction, PlainValidator(parse_rational), PlainSerializer(format_rational, return_type=str)]
Point = Annotated[list[Rational], Field(min_length=4, max_length=4)]


class Schema(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, extra="forbid", populate_by_name=True)


class Term(Schema):
    exp: list[Annotated[int, Field(ge=0)]]
    coef: Rational


class Poly(Schema):
    vars: int = Field(ge=0)
    terms: list[Term] = Field(default_factory=list)
    text: str | None = None

    @model_validator(mode="after")
    def check_lengths(self):
        for term in self.terms:
            if len(term.exp) != self.vars:
                raise ValueError(f"Exponent {term.exp} does not match vars={self.vars}")
        return self


class Line(Schema):
    points: Annotated[list[Point], Field(min_length=2, max_length=2)] | None = None
    pluecker: Annotated[list[Rational], Field(min_length=6, max_length=6)] | None = None

    @model_validator(mode="after")
    def one_representation(self):
        if (self.points is None) == (self.pluecker is None):
            raise ValueError("A line is given either by two points or by Pluecker coordinates")
        return self


class Conic(Schema):
    through: Point | None = None
    B: Point | None = None
    C: Point | None = None
    forms: Annotated[list[Poly], Field(min_length=4, max_length=4)] | None = None

    @model_validator(mode="after")
    def one_representation(self):
        by_points = self.through is not None and self.B is not None and self.C is not None
        if by_points == (self.forms is not None):
            raise ValueError('A conic is given either by "through", "B", "C" or by four forms')
        return self


class Quadric(Schema):
    equation: Poly | None = None
    coefficients: Annotated[list[Rational], Field(min_length=10, max_length=10)] | None = None

    @model_validator(mode="after")
    def one_representation(self):
        if (self.equation is None) == (self.coefficients is None):
            raise ValueError("A quadric is given either by an equation or by c0..c9")
        return self


class Centers(Schema):
    centers: Annotated[list[Point], Field(min_length=4, max_length=4)]


class IdealInput(Schema):
    vars: int = Field(ge=1)
    generators: list[Poly]
    order: str = "grevlex"


class Surface(Schema):
    equation: Poly
    vertex: Point | None = None
