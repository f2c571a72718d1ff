import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from services.errors import (
    CoincidentPointsError,
    DegenerateSampleError,
    EmptyImageError,
    HadamardUndefinedError,
    UnsupportedCurveError,
)
from services.exact_linalg import RatMatrix, det_bareiss, kernel_basis, primitive_vector, rank, rref, to_fraction
from services.multipoly import MultiPoly

logger = logging.getLogger(__name__)

# индексы Плюккера с нуля: q12..q34 в записи с единицы соответствуют p01..p23
PLUECKER_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
PLUECKER_NAMES = ("p01", "p02", "p03", "p12", "p13", "p23")


@dataclass(frozen=True)
class ProjPoint:
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coords) != 4:
            raise ValueError(f"Point in P3 needs 4 coordinates, got {len(self.coords)}")
        if all(to_fraction(c) == 0 for c in self.coords):
            raise ValueError("All coordinates of a projective point are zero")
        object.__setattr__(self, "coords", primitive_vector(self.coords))

    @classmethod
    def of(cls, *coords) -> "ProjPoint":
        return cls(tuple(to_fraction(c) for c in coords))

    @classmethod
    def coordinate(cls, i: int) -> "ProjPoint":
        return cls.of(*(int(j == i) for j in range(4)))

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i: int) -> Fraction:
        return self.coords[i]

    def zero_slots(self) -> set[int]:
        return {i for i, c in enumerate(self.coords) if c == 0}

    def __str__(self) -> str:
        return "(" + ":".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class DiagonalAuto:
    """Диагональный автоморфизм diag(t0..t3) из тора"""
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.entries) != 4 or any(to_fraction(t) == 0 for t in self.entries):
            raise ValueError(f"Diagonal automorphism needs 4 nonzero entries, got {self.entries}")
        object.__setattr__(self, "entries", tuple(to_fraction(t) for t in self.entries))

    @classmethod
    def identity(cls) -> "DiagonalAuto":
        return cls((Fraction(1),) * 4)

    @classmethod
    def sample(cls, rng: random.Random, bound: int = 9) -> "DiagonalAuto":
        values = []
        while len(values) < 4:
            value = rng.randint(-bound, bound)
            if value:
                values.append(Fraction(value))
        return cls(tuple(values))

    def inverse(self) -> "DiagonalAuto":
        return DiagonalAuto(tuple(1 / t for t in self.entries))

    def compose(self, other: "DiagonalAuto") -> "DiagonalAuto":
        return DiagonalAuto(tuple(a * b for a, b in zip(self.entries, other.entries)))


def _star(u: Sequence[Fraction], v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(to_fraction(a) * to_fraction(b) for a, b in zip(u, v))


def hadamard_point(p: ProjPoint, q: ProjPoint) -> ProjPoint:
    """Покоординатное произведение точек"""
    product = _star(p.coords, q.coords)
    if all(c == 0 for c in product):
        raise HadamardUndefinedError(f"{p} * {q} is not defined (base point of the Hadamard map)")
    return ProjPoint(product)


@dataclass(frozen=True)
class LineP3:
    span: RatMatrix
    pluecker: tuple[Fraction, ...]

    @classmethod
    def from_span(cls, rows: Sequence[Sequence]) -> "LineP3":
        matrix = RatMatrix.from_rows(rows, cols=4)
        if rank(matrix) != 2:
            raise CoincidentPointsError(f"Span matrix {matrix.to_lists()} does not have rank 2")
        reduced, _ = rref(matrix)
        a, b = reduced.row(0), reduced.row(1)
        coords = tuple(a[i] * b[j] - a[j] * b[i] for i, j in PLUECKER_PAIRS)
        return cls(RatMatrix.from_rows([a, b], cols=4), coords)

    @classmethod
    def from_pluecker(cls, coords: Sequence) -> "LineP3":
        """Прямая по координатам Плюккера (p01,p02,p03,p12,p13,p23)"""
        coords = [to_fraction(c) for c in coords]
        if len(coords) != 6 or all(c == 0 for c in coords):
            raise ValueError(f"Pluecker vector must have 6 coordinates, not all zero: {coords}")
        if pluecker_relation(coords) != 0:
            raise ValueError(f"Pluecker relation fails for {coords}")
        full = [[Fraction(0)] * 4 for _ in range(4)]
        for (i, j), value in zip(PLUECKER_PAIRS, coords):
            full[i][j] = value
            full[j][i] = -value
        # строки кососимметрической матрицы лежат на прямой
        reduced, _ = rref(RatMatrix.from_rows(full))
        return cls.from_span([reduced.row(0), reduced.row(1)])

    def points(self) -> tuple[ProjPoint, ProjPoint]:
        return ProjPoint(self.span.row(0)), ProjPoint(self.span.row(1))

    def point_at(self, s, t) -> tuple[Fraction, ...]:
        a, b = self.span.row(0), self.span.row(1)
        return tuple(to_fraction(s) * x + to_fraction(t) * y for x, y in zip(a, b))

    def contains(self, p: ProjPoint) -> bool:
        return rank(RatMatrix.from_rows([self.span.row(0), self.span.row(1), p.coords])) == 2

    def in_coordinate_plane(self) -> int | None:
        for i in range(4):
            if self.span[0, i] == 0 and self.span[1, i] == 0:
                return i
        return None

    def meet_plane(self, i: int) -> ProjPoint:
        """Пересечение с координатной плоскостью Hᵢ (прямая не лежит в Hᵢ)"""
        a, b = self.span.row(0), self.span.row(1)
        if a[i] == 0 and b[i] == 0:
            raise ValueError(f"Line lies in the coordinate plane H{i}")
        return ProjPoint(tuple(b[i] * x - a[i] * y for x, y in zip(a, b)))

    def meets_coordinate_line(self, i: int, j: int) -> bool:
        """Пересекает ли прямая координатную прямую Hᵢ ∩ Hⱼ"""
        sub = RatMatrix.from_rows([[self.span[0, i], self.span[0, j]], [self.span[1, i], self.span[1, j]]])
        return rank(sub) < 2

    def __str__(self) -> str:
        a, b = self.points()
        return f"<{a}, {b}>"


def pluecker_relation(p: Sequence[Fraction]) -> Fraction:
    return p[0] * p[5] - p[1] * p[4] + p[2] * p[3]


def line_from_points(p: ProjPoint, q: ProjPoint) -> LineP3:
    if p == q:
        raise CoincidentPointsError(f"Points {p} and {q} coincide")
    return LineP3.from_span([p.coords, q.coords])


def point_star_line(p: ProjPoint, line: LineP3) -> LineP3 | ProjPoint:
    """Образ p ⋆ L: прямая в общем случае, точка при вырождении"""
    a, b = (_star(p.coords, line.span.row(k)) for k in range(2))
    r = rank(RatMatrix.from_rows([a, b]))
    if r == 0:
        raise EmptyImageError(f"{p} * x is undefined for every x on {line}")
    if r == 1:
        return ProjPoint(a if any(a) else b)
    return LineP3.from_span([a, b])


def xl_value(line: LineP3, other: LineP3) -> Fraction:
    """q01·q23·m02·m13 − q02·q13·m01·m23"""
    q, m = line.pluecker, other.pluecker
    return q[0] * q[5] * m[1] * m[4] - q[1] * q[4] * m[0] * m[5]


def xl_membership(line: LineP3, other: LineP3) -> bool:
    return xl_value(line, other) == 0


# --- параметризованные кривые ---

S_T = ("s", "t")


@dataclass(frozen=True)
class ParamCurve:
    """Рационально параметризованная прямая (d=1) или плоская коника (d=2)"""
    degree: int
    forms: tuple[MultiPoly, ...]

    def __post_init__(self):
        if self.degree not in (1, 2):
            raise UnsupportedCurveError(f"Curves of degree {self.degree} are not supported")
        if len(self.forms) != 4:
            raise UnsupportedCurveError(f"A curve in P3 needs 4 forms, got {len(self.forms)}")
        for form in self.forms:
            if form.nvars != 2 or (not form.is_zero() and form.degree_in((0, 1)) != {self.degree}):
                raise UnsupportedCurveError(f"Form {form} is not a binary form of degree {self.degree}")
        if binary_gcd_degree(self.forms) != 0:
            raise UnsupportedCurveError("Forms of the curve share a common factor")
        if rank(self.coefficient_matrix()) != self.degree + 1:
            raise UnsupportedCurveError(f"Image of the curve does not span a P^{self.degree}")

    @classmethod
    def from_line(cls, line: LineP3) -> "ParamCurve":
        a, b = line.span.row(0), line.span.row(1)
        s, t = MultiPoly.var(2, 0), MultiPoly.var(2, 1)
        return cls(1, tuple(s.scale(x) + t.scale(y) for x, y in zip(a, b)))

    @classmethod
    def conic(cls, a: Sequence, b: Sequence, c: Sequence) -> "ParamCurve":
        """c(s,t) = s²·A + st·B + t²·C"""
        s, t = MultiPoly.var(2, 0), MultiPoly.var(2, 1)
        ss, st, tt = s * s, s * t, t * t
        return cls(2, tuple(ss.scale(x) + st.scale(y) + tt.scale(z) for x, y, z in zip(a, b, c)))

    def coefficient_matrix(self) -> RatMatrix:
        """Строка k - коэффициенты формы k при s^d, s^(d−1)t, …, t^d"""
        exps = [(self.degree - k, k) for k in range(self.degree + 1)]
        return RatMatrix.from_rows([[f.coefficient(e) for e in exps] for f in self.forms])

    def point_at(self, s, t) -> tuple[Fraction, ...]:
        return tuple(f.evaluate((s, t)) for f in self.forms)

    def plane(self) -> tuple[Fraction, ...] | None:
        """Линейная форма плоскости коники (для прямой - None)"""
        if self.degree != 2:
            return None
        relations = _left_kernel(self.coefficient_matrix())
        return relations[0]

    def base_line(self) -> LineP3 | None:
        if self.degree != 1:
            return None
        m = self.coefficient_matrix().transpose()
        return LineP3.from_span([m.row(0), m.row(1)])


def _left_kernel(m: RatMatrix) -> list[tuple[Fraction, ...]]:
    return kernel_basis(m.transpose())


def torus_act(psi: DiagonalAuto, obj):
    """Действие диагонального автоморфизма на точку, прямую или кривую"""
    if isinstance(obj, ProjPoint):
        return ProjPoint(_star(psi.entries, obj.coords))
    if isinstance(obj, LineP3):
        return LineP3.from_span([_star(psi.entries, obj.span.row(k)) for k in range(2)])
    if isinstance(obj, ParamCurve):
        return ParamCurve(obj.degree, tuple(f.scale(t) for f, t in zip(obj.forms, psi.entries)))
    raise TypeError(f"Torus cannot act on {type(obj).__name__}")


# --- НОД бинарных форм ---

def _dehomogenize(form: MultiPoly) -> tuple[list[Fraction], int]:
    """Форма f(s,t) → (коэффициенты f(s,1) по возрастанию степени s, кратность множителя t)"""
    degree = form.total_degree()
    coeffs = [form.coefficient((k, degree - k)) for k in range(degree + 1)]
    t_mult = 0
    while t_mult < len(coeffs) and coeffs[len(coeffs) - 1 - t_mult] == 0:
        t_mult += 1
    # коэффициент при s^k t^(d−k); множитель t^m ⇔ старшие по s коэффициенты нулевые
    return _trim(coeffs), t_mult


def _trim(poly: list[Fraction]) -> list[Fraction]:
    poly = list(poly)
    while poly and poly[-1] == 0:
        poly.pop()
    return poly


def _poly_mod(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    while len(a) >= len(b) and a:
        factor = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] -= factor * c
        a = _trim(a)
    return a


def _poly_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _poly_mod(a, b)
    return a


def binary_gcd_degree(forms: Sequence[MultiPoly]) -> int | None:
    """Степень НОД бинарных форм над ℚ; None, если все формы нулевые"""
    nonzero = [f for f in forms if not f.is_zero()]
    if not nonzero:
        return None
    affine: list[Fraction] = []
    t_mult = None
    for form in nonzero:
        coeffs, mult = _dehomogenize(form)
        affine = _poly_gcd(affine, coeffs)
        t_mult = mult if t_mult is None else min(t_mult, mult)
    return (len(affine) - 1) + t_mult


def share_common_factor(forms: Sequence[MultiPoly]) -> bool:
    """Есть ли у форм общий корень на P¹ (пустое семейство - да)"""
    degree = binary_gcd_degree(forms)
    return degree is None or degree > 0


def conic_through(point: ProjPoint, rng: random.Random, bound: int = 9, retries: int = 100) -> ParamCurve:
    """Случайная плоская коника c(s,t) = s²A + stB + t²C с A = point"""
    a = point.coords
    for attempt in range(retries):
        b = [Fraction(rng.randint(-bound, bound)) for _ in range(4)]
        c = [Fraction(rng.randint(-bound, bound)) for _ in range(4)]
        try:
            curve = ParamCurve.conic(a, b, c)
        except UnsupportedCurveError:
            logger.debug(f"Rejected conic sample {attempt}")
            continue
        return curve
    raise DegenerateSampleError(f"No valid conic through {point} after {retries} draws")


def plane_contains(points: Sequence[Sequence[Fraction]]) -> bool:
    """Четыре точки компланарны ⇔ определитель 4×4 равен нулю"""
    return det_bareiss(RatMatrix.from_rows(points)) == 0
