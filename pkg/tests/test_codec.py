from fractions import Fraction

import pytest
from pydantic import ValidationError

from models import geometry
from services.errors import MalformedInputError
from services.projgeom import ProjPoint
from utils import codec


def test_parse_rational():
    assert geometry.parse_rational(3) == 3
    assert geometry.parse_rational("-2/6") == Fraction(-1, 3)
    assert geometry.parse_rational(" 5 ") == 5
    for bad in (True, "1/0", "a/b", 0.5, None):
        with pytest.raises(ValueError):
            geometry.parse_rational(bad)


def test_rationals_serialize_as_strings():
    term = geometry.Term(exp=[1, 0], coef="3/4")
    assert term.model_dump(mode="json") == {"exp": [1, 0], "coef": "3/4"}


def test_bad_json_reports_position():
    with pytest.raises(MalformedInputError, match="line 1, column"):
        codec.load_json('{"points": [')


def test_missing_file():
    with pytest.raises(MalformedInputError, match="Cannot read"):
        codec.load_json("@/nonexistent/curve.json")


def test_json_from_file(tmp_path):
    path = tmp_path / "line.json"
    path.write_text('{"points": [[1, 0, 0, 0], [0, 1, 0, 0]]}', encoding="utf-8")
    curve = codec.curve_from_json(f"@{path}")
    assert curve.degree == 1


def test_line_needs_one_representation():
    with pytest.raises(ValidationError):
        geometry.Line(points=[[1, 0, 0, 0], [0, 1, 0, 0]], pluecker=[1, 0, 0, 0, 0, 0])
    with pytest.raises(ValidationError):
        geometry.Line()


def test_curve_from_json():
    line = codec.curve_from_json('{"points": [[1, 0, 1, 0], [0, 1, 0, 1]]}')
    assert line.degree == 1
    conic = codec.curve_from_json('{"through": [1, 1, 1, 1], "B": [1, 2, 3, 4], "C": [1, 0, 0, 2]}')
    assert conic.degree == 2
    with pytest.raises(MalformedInputError):
        codec.curve_from_json('{"points": [[1, 0, 1, 0], [2, 0, 2, 0]]}')
    with pytest.raises(MalformedInputError):
        codec.curve_from_json('{"through": [1, 1, 1]}')


def test_point_and_poly_models():
    assert codec.point_from_model(["2", "4", "0", "-6"]) == ProjPoint.of(1, 2, 0, -3)
    with pytest.raises(MalformedInputError):
        codec.point_from_model([0, 0, 0, 0])
    model = geometry.Poly(vars=4, terms=[{"exp": [1, 0, 0, 1], "coef": 1}, {"exp": [0, 1, 1, 0], "coef": -1}])
    poly = codec.poly_from_model(model)
    assert codec.poly_from_model(codec.poly_to_model(poly)) == poly
    with pytest.raises(ValidationError):
        geometry.Poly(vars=3, terms=[{"exp": [1, 0], "coef": 1}])


def test_surface_must_be_homogeneous():
    model = geometry.Poly(vars=4, terms=[{"exp": [2, 0, 0, 0], "coef": 1}, {"exp": [0, 1, 0, 0], "coef": 1}])
    with pytest.raises(MalformedInputError):
        codec.checked_surface(model)


def test_quadric_from_coefficients():
    model = geometry.Quadric(coefficients=[0, 0, 0, 1, 0, 0, 0, 0, 0, 0])
    quadric = codec.quadric_from_model(model)
    assert quadric.equation.total_degree() == 2
    with pytest.raises(ValidationError):
        geometry.Quadric(coefficients=[1, 2, 3])
