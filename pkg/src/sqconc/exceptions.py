class SqconcError(Exception):
    """Base class for errors raised by this package."""


class DimensionError(SqconcError, ValueError):
    pass


class NotHermitianError(SqconcError, ValueError):
    pass


class NotPSDError(SqconcError, ValueError):
    pass


class InvalidStateError(SqconcError, ValueError):
    pass


class ParameterError(SqconcError, ValueError):
    pass


class ConvergenceError(SqconcError, ArithmeticError):
    def __init__(self, message, residual):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual


class FormulaDomainError(SqconcError, ArithmeticError):
    """A closed-form expression hit a logarithm outside its domain."""

    def __init__(self, term, argument):
        super().__init__(f"log of {argument!r} in term {term!r}")
        self.term = term
        self.argument = argument


class NoSignChangeError(SqconcError, ValueError):
    pass
