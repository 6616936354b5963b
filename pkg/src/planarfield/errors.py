"""Exception hierarchy shared by all modules."""


class PlanarFieldError(Exception):
    """Base class for every error raised by this package."""


class ZeroInversion(PlanarFieldError, ZeroDivisionError):
    pass


class DivisionByZeroPoly(PlanarFieldError, ZeroDivisionError):
    pass


class ZeroPolynomial(PlanarFieldError, ValueError):
    pass


class DimensionMismatch(PlanarFieldError, ValueError):
    pass


class ModulusMismatch(PlanarFieldError, ValueError):
    pass


class Singular(PlanarFieldError, ArithmeticError):
    """Raised when a matrix has no inverse; ``rank`` is the witness."""

    def __init__(self, rank, n=None):
        self.rank = rank
        self.n = n
        msg = f"matrix is singular (rank {rank}"
        msg += f" < {n})" if n is not None else ")"
        super().__init__(msg)


class NonDivisor(PlanarFieldError, ValueError):
    pass


class NotInvertible(PlanarFieldError, ValueError):
    pass


class EmptyInput(PlanarFieldError, ValueError):
    pass


class EvenCharacteristic(PlanarFieldError, ValueError):
    pass


class NotAPermutation(PlanarFieldError, ValueError):
    pass


class NotPlanarParameters(PlanarFieldError, ValueError):
    pass


class NotInvertibleParameters(PlanarFieldError, ValueError):
    pass


class ZeroDirection(PlanarFieldError, ValueError):
    pass


class SizeGuard(PlanarFieldError, RuntimeError):
    """An enumeration would exceed the configured size limit."""

    def __init__(self, size, limit):
        self.size = size
        self.limit = limit
        super().__init__(f"enumeration of {size} elements exceeds limit {limit}")
