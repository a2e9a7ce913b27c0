"""Exceptions raised by fractal_hodge
"""


class FractalHodgeError(Exception):
    """Base class of every error raised by the package."""


class ResourceCapError(FractalHodgeError, MemoryError):
    def __init__(self, requested, cap):
        self.requested = requested
        self.cap = cap
        super().__init__(f"construction needs {requested} simplices, above the cap of {cap} "
                         "(raise it with --cap or FRACTAL_HODGE_CAP)")


class UnknownVertexError(FractalHodgeError, KeyError):
    pass


class GenerationMismatchError(FractalHodgeError, ValueError):
    pass


class ShapeMismatchError(FractalHodgeError, ValueError):
    pass


class InvalidDegreeError(FractalHodgeError, ValueError):
    pass


class NonPositiveWeightError(FractalHodgeError, ValueError):
    pass


class SingularSystemError(FractalHodgeError, ArithmeticError):
    pass


class NotHarmonicError(FractalHodgeError, ValueError):
    pass


class InconsistentPotentialError(FractalHodgeError, ValueError):
    pass


class WordLengthError(FractalHodgeError, ValueError):
    pass


class HodgeSolverError(FractalHodgeError, ArithmeticError):
    def __init__(self, message, condition_number=None):
        self.condition_number = condition_number
        if condition_number is not None:
            message = f"{message} (condition number {condition_number:.3e})"
        super().__init__(message)


class VerificationFailure(FractalHodgeError, AssertionError):
    pass


class UnsupportedGasketError(FractalHodgeError, ValueError):
    pass


class DepthCapError(FractalHodgeError, ValueError):
    def __init__(self, depth, cap):
        self.depth = depth
        self.cap = cap
        super().__init__(f"depth {depth} exceeds the configured depth cap {cap}")


class MalformedDocumentError(FractalHodgeError, ValueError):
    pass
