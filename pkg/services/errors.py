class HadamardError(ValueError):
    """Базовая ошибка вычислений"""


class NotSquareError(HadamardError):
    pass


class VariableCountError(HadamardError):
    pass


class InhomogeneousError(HadamardError):
    pass


class HadamardUndefinedError(HadamardError):
    """Произведение Адамара не определено (базовая точка отображения)"""


class CoincidentPointsError(HadamardError):
    pass


class EmptyImageError(HadamardError):
    pass


class DegenerateSampleError(HadamardError):
    """Случайная выборка не удовлетворила условиям после всех попыток"""


class UnsupportedCurveError(HadamardError):
    pass


class CapExhaustedError(HadamardError):
    """Не найдено уравнение до заданной степени"""


class CenterNotOnPlaneError(HadamardError):
    pass


class InconsistentCentersError(HadamardError):
    """Система 12×10 имеет только нулевое решение"""


class DegenerateConfigurationError(HadamardError):
    """Ядро системы 12×10 имеет размерность ≥ 2"""


class PlaneComponentError(HadamardError):
    pass


class WrongQuadricError(HadamardError):
    pass


class MalformedInputError(HadamardError):
    pass


class GroebnerOverflowError(HadamardError):
    """Превышен лимит редукций S-пар"""
