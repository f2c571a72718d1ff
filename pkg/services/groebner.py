import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from services.errors import GroebnerOverflowError, VariableCountError
from services.multipoly import GREVLEX, Exponent, MonomialOrder, MultiPoly

logger = logging.getLogger(__name__)

DEFAULT_STEP_LIMIT = 200000


@dataclass(frozen=True)
class Ideal:
    nvars: int
    generators: tuple[MultiPoly, ...] = field(default_factory=tuple)

    def __post_init__(self):
        gens = tuple(g for g in self.generators if not g.is_zero())
        for g in gens:
            if g.nvars != self.nvars:
                raise VariableCountError(f"Generator in {g.nvars} variables for an ideal in {self.nvars}")
        object.__setattr__(self, "generators", gens)


@dataclass(frozen=True)
class GroebnerBasis:
    basis: tuple[MultiPoly, ...]
    order: MonomialOrder
    nvars: int

    @property
    def is_unit(self) -> bool:
        return any(g.is_constant() for g in self.basis)

    def leading_monomials(self) -> list[Exponent]:
        return [g.leading_term(self.order)[0] for g in self.basis]


def _divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


def _s_polynomial(f: MultiPoly, g: MultiPoly, lt_f: Exponent, lt_g: Exponent) -> MultiPoly:
    """S-многочлен двух приведённых (старший коэффициент 1) многочленов"""
    m = _lcm(lt_f, lt_g)
    left = f.mul_term(tuple(a - b for a, b in zip(m, lt_f)), Fraction(1))
    right = g.mul_term(tuple(a - b for a, b in zip(m, lt_g)), Fraction(1))
    return left - right


def _reduce(p: MultiPoly, divisors: list[MultiPoly], leads: list[tuple[Exponent, Fraction]], order: MonomialOrder) -> MultiPoly:
    """Полный остаток от деления p на divisors"""
    work = dict(p.terms)
    remainder: dict[Exponent, Fraction] = {}
    while work:
        exp = max(work, key=order.key)
        coef = work[exp]
        for g, (lt, lc) in zip(divisors, leads):
            if _divides(lt, exp):
                shift = tuple(a - b for a, b in zip(exp, lt))
                factor = coef / lc
                for ge, gc in g.terms.items():
                    key = tuple(a + b for a, b in zip(ge, shift))
                    value = work.get(key, Fraction(0)) - factor * gc
                    if value:
                        work[key] = value
                    else:
                        work.pop(key, None)
                break
        else:
            remainder[exp] = coef
            del work[exp]
    return MultiPoly(p.nvars, remainder)


class GroebnerEngine:
    """Детерминированный алгоритм Бухбергера с ограничением на число редукций"""

    def __init__(self, step_limit: int = DEFAULT_STEP_LIMIT):
        self.step_limit = step_limit

    def buchberger(self, ideal: Ideal, order: MonomialOrder = GREVLEX) -> GroebnerBasis:
        """Приведённый базис Грёбнера идеала в заданном порядке"""
        logger.info(f"Computing Groebner basis of {len(ideal.generators)} generators in {ideal.nvars} variables, order {order}")
        basis: list[MultiPoly] = []
        leads: list[Exponent] = []
        pairs: set[tuple[int, int]] = set()

        def add(f: MultiPoly) -> None:
            index = len(basis)
            basis.append(f.monic(order))
            leads.append(f.leading_term(order)[0])
            pairs.update((i, index) for i in range(index))

        for g in ideal.generators:
            add(g)

        steps = 0
        while pairs:
            i, j = min(pairs, key=lambda p: (order.key(_lcm(leads[p[0]], leads[p[1]])), p))
            pairs.discard((i, j))
            m = _lcm(leads[i], leads[j])
            # взаимно простые старшие мономы
            if all(a == 0 or b == 0 for a, b in zip(leads[i], leads[j])):
                continue
            # критерий цепочки
            if any(
                k not in (i, j)
                and _divides(leads[k], m)
                and (min(i, k), max(i, k)) not in pairs
                and (min(j, k), max(j, k)) not in pairs
                for k in range(len(basis))
            ):
                continue
            steps += 1
            if steps > self.step_limit:
                logger.error(f"Groebner step limit {self.step_limit} exceeded")
                raise GroebnerOverflowError(f"More than {self.step_limit} S-pair reductions")
            s = _s_polynomial(basis[i], basis[j], leads[i], leads[j])
            r = _reduce(s, basis, [(lt, Fraction(1)) for lt in leads], order)
            if not r.is_zero():
                add(r)
                if r.is_constant():
                    logger.info("Ideal is the unit ideal")
                    return GroebnerBasis((MultiPoly.constant(ideal.nvars, 1),), order, ideal.nvars)

        if any(g.is_constant() for g in basis):
            return GroebnerBasis((MultiPoly.constant(ideal.nvars, 1),), order, ideal.nvars)
        reduced = self._interreduce(self._minimalize(basis, order), order)
        logger.info(f"Groebner basis has {len(reduced)} elements after {steps} reductions")
        return GroebnerBasis(tuple(reduced), order, ideal.nvars)

    @staticmethod
    def _minimalize(basis: list[MultiPoly], order: MonomialOrder) -> list[MultiPoly]:
        result: list[MultiPoly] = []
        for f in sorted(basis, key=lambda h: order.key(h.leading_term(order)[0])):
            lt = f.leading_term(order)[0]
            if all(not _divides(g.leading_term(order)[0], lt) for g in result):
                result.append(f)
        return result

    @staticmethod
    def _interreduce(basis: list[MultiPoly], order: MonomialOrder) -> list[MultiPoly]:
        result = []
        for i, f in enumerate(basis):
            others = basis[:i] + basis[i + 1:]
            lt, _ = f.leading_term(order)
            tail = MultiPoly(f.nvars, {e: c for e, c in f.terms.items() if e != lt})
            tail = _reduce(tail, others, [g.leading_term(order) for g in others], order)
            result.append(tail + MultiPoly.monomial(lt))
        return result

    def normal_form(self, p: MultiPoly, gb: GroebnerBasis) -> MultiPoly:
        """Остаток многомерного деления; ноль тогда и только тогда, когда p лежит в идеале"""
        if p.nvars != gb.nvars:
            raise VariableCountError(f"Polynomial in {p.nvars} variables, basis in {gb.nvars}")
        basis = list(gb.basis)
        return _reduce(p, basis, [g.leading_term(gb.order) for g in basis], gb.order)

    def contains(self, ideal: Ideal, p: MultiPoly) -> bool:
        return self.normal_form(p, self.buchberger(ideal)).is_zero()

    def eliminate(self, ideal: Ideal, drop_first: int) -> Ideal:
        """Образующие пересечения идеала с подкольцом без первых drop_first переменных"""
        order = MonomialOrder("block", drop_first) if drop_first else GREVLEX
        gb = self.buchberger(ideal, order)
        kept = tuple(g for g in gb.basis if all(i >= drop_first for i in g.used_variables()))
        logger.info(f"Elimination of {drop_first} variables kept {len(kept)} generators")
        return Ideal(ideal.nvars, kept)

    def ideal_dimension(self, ideal: Ideal) -> int:
        """Размерность Крулля аффинного множества нулей; −1 для единичного идеала"""
        gb = self.buchberger(ideal, GREVLEX)
        if gb.is_unit:
            return -1
        supports = [{i for i, k in enumerate(lm) if k} for lm in gb.leading_monomials()]
        for size in range(ideal.nvars, -1, -1):
            for subset in combinations(range(ideal.nvars), size):
                chosen = set(subset)
                if not any(s <= chosen for s in supports):
                    logger.info(f"Ideal dimension is {size}")
                    return size
        return 0


def is_reduced_basis(gb: GroebnerBasis) -> bool:
    """Проверка приведённости: старшие мономы не делят мономы других элементов, S-пары сводятся к нулю"""
    basis = list(gb.basis)
    order = gb.order
    leads = [g.leading_term(order) for g in basis]
    for i, g in enumerate(basis):
        if leads[i][1] != 1:
            return False
        for j, (lt, _) in enumerate(leads):
            if i != j and any(_divides(lt, e) for e in g.terms):
                return False
    for i, j in combinations(range(len(basis)), 2):
        s = _s_polynomial(basis[i], basis[j], leads[i][0], leads[j][0])
        if not _reduce(s, basis, leads, order).is_zero():
            return False
    return True
