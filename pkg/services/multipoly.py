import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import comb
from typing import Iterable, Mapping, Sequence

from services.errors import InhomogeneousError, VariableCountError
from services.exact_linalg import RatMatrix, primitive_vector, rank, to_fraction

logger = logging.getLogger(__name__)

Exponent = tuple[int, ...]


@dataclass(frozen=True)
class MonomialOrder:
    """Мономиальный порядок: lex, grevlex или блочный (первые k переменных исключаются)"""
    kind: str = "grevlex"
    block: int = 0

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "block"):
            raise ValueError(f"Unknown monomial order {self.kind}")

    @classmethod
    def parse(cls, text: str) -> "MonomialOrder":
        if text.startswith("block:"):
            return cls("block", int(text.split(":", 1)[1]))
        return cls(text)

    def __str__(self) -> str:
        return f"block:{self.block}" if self.kind == "block" else self.kind

    def key(self, exp: Exponent):
        """Ключ сортировки: больший ключ - старший моном"""
        if self.kind == "lex":
            return exp
        if self.kind == "grevlex":
            return _grevlex_key(exp)
        return _grevlex_key(exp[:self.block]), _grevlex_key(exp[self.block:])


def _grevlex_key(exp: Exponent):
    return (sum(exp),) + tuple(-e for e in reversed(exp))


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def monomials_of_degree(nvars: int, degree: int) -> list[Exponent]:
    """Однородные мономы степени degree в лексикографическом порядке (x0^d первым)"""
    result = []
    for combo in combinations_with_replacement(range(nvars), degree):
        exp = [0] * nvars
        for i in combo:
            exp[i] += 1
        result.append(tuple(exp))
    result.sort(reverse=True)
    assert len(result) == comb(nvars + degree - 1, degree)
    return result


@dataclass(frozen=True)
class MultiPoly:
    nvars: int
    terms: Mapping[Exponent, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for exp, coef in self.terms.items():
            if len(exp) != self.nvars:
                raise VariableCountError(f"Exponent {exp} in a ring of {self.nvars} variables")
            coef = to_fraction(coef)
            if coef != 0:
                clean[tuple(exp)] = coef
        object.__setattr__(self, "terms", clean)

    # --- конструкторы ---

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls(nvars, {})

    @classmethod
    def constant(cls, nvars: int, value) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: to_fraction(value)})

    @classmethod
    def var(cls, nvars: int, index: int) -> "MultiPoly":
        if not 0 <= index < nvars:
            raise VariableCountError(f"Variable {index} out of range for {nvars} variables")
        exp = [0] * nvars
        exp[index] = 1
        return cls(nvars, {tuple(exp): Fraction(1)})

    @classmethod
    def monomial(cls, exp: Exponent, coef=1) -> "MultiPoly":
        return cls(len(exp), {tuple(exp): to_fraction(coef)})

    @classmethod
    def linear_form(cls, coefficients: Sequence, offset: int = 0, nvars: int | None = None) -> "MultiPoly":
        """Σ cᵢ·x_{offset+i}"""
        n = nvars if nvars is not None else offset + len(coefficients)
        result = cls.zero(n)
        for i, c in enumerate(coefficients):
            result = result + cls.var(n, offset + i).scale(c)
        return result

    # --- арифметика ---

    def _check(self, other: "MultiPoly"):
        if self.nvars != other.nvars:
            raise VariableCountError(f"Variable count mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        terms = dict(self.terms)
        for exp, coef in other.terms.items():
            terms[exp] = terms.get(exp, Fraction(0)) + coef
        return MultiPoly(self.nvars, terms)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        self._check(other)
        terms: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                terms[exp] = terms.get(exp, Fraction(0)) + c1 * c2
        return MultiPoly(self.nvars, terms)

    def scale(self, factor) -> "MultiPoly":
        factor = to_fraction(factor)
        return MultiPoly(self.nvars, {e: c * factor for e, c in self.terms.items()})

    def mul_term(self, exp: Exponent, coef: Fraction) -> "MultiPoly":
        """Умножение на одночлен coef·x^exp"""
        return MultiPoly(
            self.nvars,
            {tuple(a + b for a, b in zip(e, exp)): c * coef for e, c in self.terms.items()},
        )

    def __pow__(self, n: int) -> "MultiPoly":
        result = MultiPoly.constant(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    # --- свойства ---

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def degree_in(self, variables: Sequence[int]) -> set[int]:
        """Множество степеней по группе переменных (для проверки бистепени)"""
        return {sum(e[i] for i in variables) for e in self.terms}

    def used_variables(self) -> set[int]:
        return {i for e in self.terms for i, k in enumerate(e) if k}

    def sorted_terms(self, order: MonomialOrder = GREVLEX) -> list[tuple[Exponent, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def leading_term(self, order: MonomialOrder = GREVLEX) -> tuple[Exponent, Fraction]:
        exp = max(self.terms, key=order.key)
        return exp, self.terms[exp]

    def coefficient(self, exp: Exponent) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    # --- анализ ---

    def partial(self, index: int) -> "MultiPoly":
        """Формальная частная производная"""
        if not 0 <= index < self.nvars:
            raise VariableCountError(f"Variable {index} out of range for {self.nvars} variables")
        terms = {}
        for exp, coef in self.terms.items():
            k = exp[index]
            if k:
                new = list(exp)
                new[index] -= 1
                terms[tuple(new)] = coef * k
        return MultiPoly(self.nvars, terms)

    def gradient(self) -> list["MultiPoly"]:
        return [self.partial(i) for i in range(self.nvars)]

    def evaluate(self, point: Sequence) -> Fraction:
        """Точное значение в точке"""
        if len(point) != self.nvars:
            raise VariableCountError(f"Point of length {len(point)} for {self.nvars} variables")
        point = [to_fraction(v) for v in point]
        total = Fraction(0)
        for exp, coef in self.terms.items():
            value = coef
            for v, k in zip(point, exp):
                if k:
                    value *= v ** k
            total += value
        return total

    def substitute(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Подстановка многочленов вместо переменных (композиция)"""
        if len(images) != self.nvars:
            raise VariableCountError(f"{len(images)} images for {self.nvars} variables")
        if not images:
            return self
        target = images[0].nvars
        powers: dict[tuple[int, int], MultiPoly] = {}

        def power(i: int, k: int) -> MultiPoly:
            if (i, k) not in powers:
                powers[(i, k)] = images[i] ** k
            return powers[(i, k)]

        result = MultiPoly.zero(target)
        for exp, coef in self.terms.items():
            term = MultiPoly.constant(target, coef)
            for i, k in enumerate(exp):
                if k:
                    term = term * power(i, k)
            result = result + term
        return result

    def restrict(self, values: Mapping[int, Fraction]) -> "MultiPoly":
        """Частичная подстановка констант; число переменных сохраняется"""
        terms: dict[Exponent, Fraction] = {}
        for exp, coef in self.terms.items():
            new = list(exp)
            for i, v in values.items():
                if new[i]:
                    coef = coef * to_fraction(v) ** new[i]
                    new[i] = 0
            if coef:
                key = tuple(new)
                terms[key] = terms.get(key, Fraction(0)) + coef
        return MultiPoly(self.nvars, terms)

    def embed(self, nvars: int, positions: Sequence[int]) -> "MultiPoly":
        """Перенос в кольцо с nvars переменными: переменная i → positions[i]"""
        terms = {}
        for exp, coef in self.terms.items():
            new = [0] * nvars
            for i, k in enumerate(exp):
                new[positions[i]] += k
            terms[tuple(new)] = coef
        return MultiPoly(nvars, terms)

    def drop_variables(self, keep: Sequence[int]) -> "MultiPoly":
        """Проекция в кольцо переменных keep (остальные переменные не должны входить)"""
        terms = {}
        for exp, coef in self.terms.items():
            if any(k for i, k in enumerate(exp) if i not in keep):
                raise VariableCountError(f"Polynomial depends on a dropped variable: {exp}")
            terms[tuple(exp[i] for i in keep)] = coef
        return MultiPoly(len(keep), terms)

    def normalized(self) -> "MultiPoly":
        """Примитивные целые коэффициенты, старший (grevlex) коэффициент положителен"""
        if self.is_zero():
            return self
        ordered = self.sorted_terms(GREVLEX)
        coefs = primitive_vector([c for _, c in ordered])
        return MultiPoly(self.nvars, {e: c for (e, _), c in zip(ordered, coefs)})

    def monic(self, order: MonomialOrder = GREVLEX) -> "MultiPoly":
        if self.is_zero():
            return self
        _, lc = self.leading_term(order)
        return self.scale(1 / lc)

    def format(self, names: Sequence[str] | None = None, order: MonomialOrder = GREVLEX) -> str:
        """Текстовая запись, например x0*x3 - x1*x2"""
        names = list(names) if names else [f"x{i}" for i in range(self.nvars)]
        if self.is_zero():
            return "0"
        parts = []
        for exp, coef in self.sorted_terms(order):
            factors = [n if k == 1 else f"{n}^{k}" for n, k in zip(names, exp) if k]
            magnitude = abs(coef)
            body = "*".join(factors)
            if not body:
                body = str(magnitude)
            elif magnitude != 1:
                body = f"{magnitude}*{body}"
            parts.append(("-" if coef < 0 else "+", body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"MultiPoly({self.format()})"


def poly_arith(op: str, p: MultiPoly, q) -> MultiPoly:
    """add | mul | scalar-mul"""
    if op == "add":
        return p + q
    if op == "mul":
        return p * q
    if op == "scalar-mul":
        return p.scale(q)
    raise ValueError(f"Unknown operation {op}")


def partial_derivative(p: MultiPoly, var: int) -> MultiPoly:
    return p.partial(var)


def evaluate(p: MultiPoly, point: Sequence) -> Fraction:
    return p.evaluate(point)


def _check_forms(forms: Sequence[MultiPoly], blocks: Sequence[Sequence[int]] | None) -> None:
    groups = blocks if blocks else [list(range(forms[0].nvars))]
    for group in groups:
        degrees = set()
        for form in forms:
            if form.is_zero():
                continue
            d = form.degree_in(group)
            if len(d) > 1:
                raise InhomogeneousError(f"Form {form} is not homogeneous in variables {list(group)}")
            degrees |= d
        if len(degrees) > 1:
            raise InhomogeneousError(f"Forms have different degrees {sorted(degrees)} in variables {list(group)}")


def substitute_biparametrization(
    f: MultiPoly,
    forms: Sequence[MultiPoly],
    blocks: Sequence[Sequence[int]] | None = None,
) -> MultiPoly:
    """F(forms) для однородных (би)однородных форм одной (би)степени"""
    if len(forms) != f.nvars:
        raise VariableCountError(f"{len(forms)} forms for a polynomial in {f.nvars} variables")
    _check_forms(forms, blocks)
    return f.substitute(forms)


def euler_check(p: MultiPoly) -> bool:
    """Тождество Эйлера Σ xᵢ·∂p/∂xᵢ = deg(p)·p"""
    if not p.is_homogeneous():
        raise InhomogeneousError(f"Euler identity requires a homogeneous polynomial, got {p}")
    if p.is_zero():
        return True
    lhs = MultiPoly.zero(p.nvars)
    for i in range(p.nvars):
        lhs = lhs + MultiPoly.var(p.nvars, i) * p.partial(i)
    return lhs == p.scale(p.total_degree())


def determinant(matrix: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Определитель матрицы многочленов разложением по первой строке"""
    n = len(matrix)
    if n == 1:
        return matrix[0][0]
    total = MultiPoly.zero(matrix[0][0].nvars)
    for j in range(n):
        entry = matrix[0][j]
        if entry.is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
        term = entry * determinant(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def jacobian_rank(polys: Sequence[MultiPoly], point: Sequence) -> int:
    """Ранг матрицы Якоби в точке"""
    rows = [[p.partial(j).evaluate(point) for j in range(p.nvars)] for p in polys]
    return rank(RatMatrix.from_rows(rows))


def generic_jacobian_rank(polys: Sequence[MultiPoly], at_most: int | None = None) -> int:
    """Ранг матрицы Якоби над полем рациональных функций: порядок наибольшего ненулевого минора"""
    nvars = polys[0].nvars
    rows = [[p.partial(j) for j in range(nvars)] for p in polys]
    top = min(len(rows), nvars, at_most if at_most is not None else nvars)
    for k in range(top, 0, -1):
        for r in combinations(range(len(rows)), k):
            for c in combinations(range(nvars), k):
                if not determinant([[rows[i][j] for j in c] for i in r]).is_zero():
                    return k
    return 0


def polys_from_vectors(vectors: Iterable[Sequence], monomials: Sequence[Exponent]) -> list[MultiPoly]:
    """Многочлены по векторам коэффициентов в заданном базисе мономов"""
    nvars = len(monomials[0])
    return [MultiPoly(nvars, dict(zip(monomials, vec))) for vec in vectors]
