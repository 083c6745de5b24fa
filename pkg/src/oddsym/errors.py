"""Exception hierarchy shared by all modules."""


class OddSymError(Exception):
    """Base class for every error raised by this package."""


class GeneratorMismatch(OddSymError):
    pass


class ZeroBody(OddSymError):
    """Element is not invertible: its body (numeric part) vanishes."""


class NegativeBody(OddSymError):
    pass


class NonSquareBody(OddSymError):
    pass


class ParityViolation(OddSymError):
    pass


class UnknownSymbol(OddSymError):
    pass


class ShapeMismatch(OddSymError):
    pass


class SingularBody(OddSymError):
    """Matrix whose body is singular (cannot be inverted)."""


class DegenerateInducedForm(SingularBody):
    pass


class DegenerateStructure(OddSymError):
    pass


class NotDarboux(OddSymError):
    pass


class PairValidationError(OddSymError):
    pass


class OffSurface(OddSymError):
    pass


class InconsistentConstant(OddSymError):
    pass


class ParseError(OddSymError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class ValidationError(OddSymError):
    """Aggregated validation errors, each tagged with a document path."""

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(f"{path}: {msg}" for path, msg in self.problems))


class NotOrthogonal(OddSymError):
    pass
