import random
from fractions import Fraction

import pytest
import sympy

from services.errors import NotSquareError
from services.exact_linalg import (
    RatMatrix,
    adjugate,
    det_bareiss,
    format_rational,
    kernel_basis,
    primitive_vector,
    rank,
    rref,
)


def random_matrix(rng: random.Random, rows: int, cols: int, bound: int = 5) -> RatMatrix:
    return RatMatrix.from_rows(
        [[Fraction(rng.randint(-bound, bound), rng.randint(1, 3)) for _ in range(cols)] for _ in range(rows)]
    )


def to_sympy(m: RatMatrix) -> sympy.Matrix:
    return sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in m.row(i)] for i in range(m.rows)])


def test_format_rational():
    assert format_rational(Fraction(3)) == "3"
    assert format_rational(Fraction(-2, 4)) == "-1/2"


def test_primitive_vector():
    assert primitive_vector([Fraction(-1, 2), 1, Fraction(3, 2)]) == (1, -2, -3)
    assert primitive_vector([0, 0]) == (0, 0)


def test_det_matches_sympy():
    rng = random.Random(1)
    for n in range(1, 6):
        for _ in range(5):
            m = random_matrix(rng, n, n)
            expected = to_sympy(m).det()
            assert det_bareiss(m) == Fraction(int(expected.p), int(expected.q))


def test_det_singular_and_empty():
    m = RatMatrix.from_rows([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    assert det_bareiss(m) == 0
    assert det_bareiss(RatMatrix.from_rows([])) == 1


def test_det_not_square():
    with pytest.raises(NotSquareError):
        det_bareiss(RatMatrix.from_rows([[1, 2, 3], [4, 5, 6]]))


def test_rank_matches_sympy():
    rng = random.Random(2)
    for _ in range(20):
        rows, cols = rng.randint(1, 6), rng.randint(1, 6)
        m = random_matrix(rng, rows, cols, bound=2)
        assert rank(m) == to_sympy(m).rank()


def test_rref_pivots():
    m = RatMatrix.from_rows([[0, 2, 4], [1, 1, 1], [1, 3, 5]])
    reduced, pivots = rref(m)
    assert pivots == [0, 1]
    assert reduced.row(0) == (1, 0, -1)
    assert reduced.row(1) == (0, 1, 2)
    assert reduced.row(2) == (0, 0, 0)


def test_kernel_basis_annihilates():
    rng = random.Random(3)
    for _ in range(10):
        m = random_matrix(rng, 3, 6, bound=3)
        basis = kernel_basis(m)
        assert len(basis) == 6 - rank(m)
        for v in basis:
            assert all(x == 0 for x in m.apply(v))
            assert v == primitive_vector(v)


def test_adjugate_identity():
    rng = random.Random(4)
    for n in (2, 3, 4):
        m = random_matrix(rng, n, n)
        product = m @ adjugate(m)
        assert product == RatMatrix.identity(n).scale(det_bareiss(m))


def test_adjugate_antidiagonal():
    gram = RatMatrix.from_rows([[0, 0, 0, 1], [0, 0, -1, 0], [0, -1, 0, 0], [1, 0, 0, 0]]).scale(Fraction(1, 2))
    assert det_bareiss(gram) == Fraction(1, 16)
    assert adjugate(gram).diagonal() == (0, 0, 0, 0)


def test_matrix_helpers():
    m = RatMatrix.from_rows([[1, 2], [3, 4]])
    assert m.transpose().row(0) == (1, 3)
    assert m.delete(0, 1).entries == (3,)
    assert not m.is_symmetric()
    assert (m @ RatMatrix.identity(2)) == m
