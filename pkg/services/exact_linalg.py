import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from services.errors import NotSquareError

logger = logging.getLogger(__name__)

Vector = tuple[Fraction, ...]


def to_fraction(value) -> Fraction:
    """Приведение числа или строки "p/q" к Fraction"""
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


def format_rational(value: Fraction) -> str:
    """Сериализация рационального числа в "p/q" или "p" """
    value = to_fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def primitive_vector(values: Iterable) -> Vector:
    """Примитивный целочисленный представитель: содержание 1, первый ненулевой элемент > 0"""
    values = [to_fraction(v) for v in values]
    if all(v == 0 for v in values):
        return tuple(values)
    denom = lcm(*(v.denominator for v in values))
    ints = [int(v * denom) for v in values]
    content = gcd(*ints)
    ints = [i // content for i in ints]
    lead = next(i for i in ints if i != 0)
    if lead < 0:
        ints = [-i for i in ints]
    return tuple(Fraction(i) for i in ints)


@dataclass(frozen=True)
class RatMatrix:
    rows: int
    cols: int
    entries: Vector

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(f"Expected {self.rows * self.cols} entries, got {len(self.entries)}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RatMatrix":
        rows = [list(r) for r in rows]
        ncols = cols if cols is not None else (len(rows[0]) if rows else 0)
        if any(len(r) != ncols for r in rows):
            raise ValueError("Rows of unequal length")
        return cls(len(rows), ncols, tuple(to_fraction(v) for r in rows for v in r))

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols, tuple(Fraction(0) for _ in range(rows * cols)))

    def __getitem__(self, index: tuple[int, int]) -> Fraction:
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Vector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_lists(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> "RatMatrix":
        return RatMatrix.from_rows([self.column(j) for j in range(self.cols)], cols=self.rows)

    def scale(self, factor) -> "RatMatrix":
        factor = to_fraction(factor)
        return RatMatrix(self.rows, self.cols, tuple(factor * v for v in self.entries))

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError(f"Cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        cols = [other.column(j) for j in range(other.cols)]
        return RatMatrix.from_rows(
            [[sum((a * b for a, b in zip(self.row(i), c)), Fraction(0)) for c in cols] for i in range(self.rows)],
            cols=other.cols,
        )

    def apply(self, vector: Sequence) -> Vector:
        """Умножение матрицы на вектор-столбец"""
        vector = [to_fraction(v) for v in vector]
        return tuple(sum((a * b for a, b in zip(self.row(i), vector)), Fraction(0)) for i in range(self.rows))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "RatMatrix":
        return RatMatrix.from_rows([[self[i, j] for j in cols] for i in rows], cols=len(cols))

    def delete(self, row: int, col: int) -> "RatMatrix":
        """Удаление строки и столбца"""
        return self.submatrix(
            [i for i in range(self.rows) if i != row],
            [j for j in range(self.cols) if j != col],
        )

    def diagonal(self) -> Vector:
        return tuple(self[i, i] for i in range(min(self.rows, self.cols)))

    def is_symmetric(self) -> bool:
        return self.is_square and all(self[i, j] == self[j, i] for i in range(self.rows) for j in range(i))


def rref(m: RatMatrix) -> tuple[RatMatrix, list[int]]:
    """Приведённый ступенчатый вид и список ведущих столбцов"""
    grid = m.to_lists()
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        if r == m.rows:
            break
        pivot_row = next((i for i in range(r, m.rows) if grid[i][c] != 0), None)
        if pivot_row is None:
            continue
        grid[r], grid[pivot_row] = grid[pivot_row], grid[r]
        inv = 1 / grid[r][c]
        grid[r] = [v * inv for v in grid[r]]
        for i in range(m.rows):
            if i != r and grid[i][c] != 0:
                factor = grid[i][c]
                grid[i] = [a - factor * b for a, b in zip(grid[i], grid[r])]
        pivots.append(c)
        r += 1
    return RatMatrix.from_rows(grid, cols=m.cols), pivots


def _integer_rows(m: RatMatrix) -> tuple[list[list[int]], int]:
    """Очистка знаменателей по строкам; возвращает целую матрицу и произведение множителей"""
    grid = []
    scale = 1
    for i in range(m.rows):
        row = m.row(i)
        denom = lcm(*(v.denominator for v in row)) if row else 1
        grid.append([int(v * denom) for v in row])
        scale *= denom
    return grid, scale


def _bareiss(grid: list[list[int]]) -> tuple[int, int]:
    """Бесдробное исключение Барейсса на месте; возвращает (ранг, знак перестановки)"""
    rows = len(grid)
    cols = len(grid[0]) if grid else 0
    sign = 1
    prev = 1
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pivot_row = next((i for i in range(r, rows) if grid[i][c] != 0), None)
        if pivot_row is None:
            continue
        if pivot_row != r:
            grid[r], grid[pivot_row] = grid[pivot_row], grid[r]
            sign = -sign
        pivot = grid[r][c]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                grid[i][j] = (grid[i][j] * pivot - grid[i][c] * grid[r][j]) // prev
            grid[i][c] = 0
        prev = pivot
        r += 1
    return r, sign


def det_bareiss(m: RatMatrix) -> Fraction:
    """Точный определитель бесдробным методом Барейсса"""
    if not m.is_square:
        raise NotSquareError(f"Determinant of a {m.rows}x{m.cols} matrix")
    if m.rows == 0:
        return Fraction(1)
    grid, scale = _integer_rows(m)
    rank_found, sign = _bareiss(grid)
    if rank_found < m.rows:
        return Fraction(0)
    return Fraction(sign * grid[-1][-1], scale)


def rank(m: RatMatrix) -> int:
    """Ранг матрицы (бесдробное исключение)"""
    if m.rows == 0 or m.cols == 0:
        return 0
    grid, _ = _integer_rows(m)
    found, _ = _bareiss(grid)
    return found


def kernel_basis(m: RatMatrix) -> list[Vector]:
    """Базис правого ядра из примитивных целочисленных векторов"""
    reduced, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * m.cols
        vec[f] = Fraction(1)
        for r, p in enumerate(pivots):
            vec[p] = -reduced[r, f]
        basis.append(primitive_vector(vec))
    logger.debug(f"Kernel of {m.rows}x{m.cols} matrix has dimension {len(basis)}")
    return basis


def adjugate(m: RatMatrix) -> RatMatrix:
    """Присоединённая матрица: транспонированная матрица алгебраических дополнений"""
    if not m.is_square:
        raise NotSquareError(f"Adjugate of a {m.rows}x{m.cols} matrix")
    n = m.rows
    if n == 1:
        return RatMatrix.identity(1)
    cofactors = [[(-1) ** (i + j) * det_bareiss(m.delete(i, j)) for j in range(n)] for i in range(n)]
    return RatMatrix.from_rows(cofactors, cols=n).transpose()
