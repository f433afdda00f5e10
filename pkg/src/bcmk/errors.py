"""Exception types shared across the package."""


class BicomplexDomainError(ValueError):
    """An operation was applied outside its domain (zero divisor or zero)."""


class NotInvertibleError(BicomplexDomainError, ArithmeticError):
    """Inverse requested for 0, a zero divisor, or a matrix with zero-divisor determinant."""


class ShapeError(ValueError):
    pass


class ArityError(ValueError):
    pass


class PreconditionError(ValueError):
    """Raised with a list of violated conditions in ``.violations``."""

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)
