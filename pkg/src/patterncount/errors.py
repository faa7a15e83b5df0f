"""Exception hierarchy shared by every module of the package."""


class PatternCountError(Exception):
    """Base class for all errors raised by patterncount."""


class AmbiguousComparison(PatternCountError):
    """An approximate direction cannot decide an order relation."""


class DegeneratePair(PatternCountError):
    pass


class NotOrdered(PatternCountError):
    pass


class BadArity(PatternCountError):
    pass


class ArityMismatch(PatternCountError):
    pass


class Incommensurable(PatternCountError):
    pass


class InfeasibleParameters(PatternCountError):
    pass


class MethodMismatch(PatternCountError):
    """Two independent counting routes disagreed. Indicates a bug."""


class NoSignChange(PatternCountError):
    """The halving-line search failed to bracket a concurrency direction."""


class TooLarge(PatternCountError):
    pass


class DuplicatePoint(PatternCountError):
    pass


class ParseError(PatternCountError):
    def __init__(self, path, line, message):
        self.path = path
        self.line = line
        super().__init__(f"{path}:{line}: {message}")
