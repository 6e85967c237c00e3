"""Exception hierarchy shared by every module."""


class SimpleKnotError(ValueError):
    """Base class for invalid input to the library."""


class NotInvertible(SimpleKnotError):
    pass


class InvalidLensSpace(SimpleKnotError):
    pass


class InvalidKnot(SimpleKnotError):
    pass


class NotPrimitive(SimpleKnotError):
    pass


class InvalidCoefficient(SimpleKnotError):
    pass


class InvalidInput(SimpleKnotError):
    pass


class ResourceLimit(SimpleKnotError):
    """p exceeds the word budget of the compiled kernels."""


class DivisionNotExact(ArithmeticError):
    """Raised when a polynomial division that must be exact leaves a remainder.

    This always indicates a bug, never bad input.
    """


class CheckpointCorrupt(RuntimeError):
    pass


class ParameterMismatch(RuntimeError):
    pass
