"""Exception types shared across the package."""


class WindowTooSmallError(ValueError):
    """The finite index window cannot exhibit the requested asymptotic behaviour."""


class NoThresholdIndexError(WindowTooSmallError):
    """No gap-threshold index exists inside the stored window."""


class FrequencyCollisionError(ValueError):
    """Two distinct indices produce the same frequency.

    ``pair`` holds the colliding indices when they are known.
    """

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class IntegerVelocityError(ValueError):
    """The sensor velocity is an integer, so the quadratic spectrum folds onto itself."""


class HalfIntegerBoundaryError(IntegerVelocityError):
    """``b - [b] == 1/2`` for ``b = a/2``; neither interlacing case applies."""


class OddDegreeError(ValueError):
    pass


class EqualIndicesError(ValueError):
    pass


class ZeroFrequencyError(ValueError):
    pass


class ToleranceError(ArithmeticError):
    """Adaptive quadrature exhausted its refinement depth before meeting tolerance."""


class ZeroVectorError(ValueError):
    pass


class IndexMisalignmentError(ValueError):
    pass


class SupportViolationError(ValueError):
    pass


class BudgetError(ValueError):
    pass


class DegeneratePairError(ValueError):
    pass


class NotExceptionalError(ValueError):
    pass


class ConfigError(ValueError):
    """Invalid experiment configuration; ``field`` names the offending key path."""

    def __init__(self, message, field=None):
        super().__init__(message if field is None else f"{field}: {message}")
        self.field = field
