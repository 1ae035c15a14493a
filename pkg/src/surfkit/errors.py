"""Exception hierarchy shared by all surfkit modules."""


class SurfkitError(Exception):
    """Base class for every error raised by surfkit."""


class DimensionError(SurfkitError, ValueError):
    pass


class ParityError(SurfkitError, ValueError):
    pass


class LatticeIndexError(SurfkitError, IndexError):
    pass


class UnsupportedSurfaceError(SurfkitError, ValueError):
    pass


class UnsupportedClassError(SurfkitError, ValueError):
    pass


class OracleInapplicableError(SurfkitError, ValueError):
    pass


class NotRationalError(SurfkitError, ValueError):
    pass


class NotBidoubleError(SurfkitError, ValueError):
    pass


class InvalidBranchError(SurfkitError, ValueError):
    pass


class SymbolError(SurfkitError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""


class ExpressionSyntaxError(SurfkitError, ValueError):
    pass


class PreconditionError(SurfkitError, ValueError):
    pass


class PoleEvaluationError(SurfkitError, ValueError):
    pass


class InconsistencyError(SurfkitError, ValueError):
    pass


class RuleInconsistencyError(SurfkitError, ValueError):
    pass


class InvalidActionError(SurfkitError, ValueError):
    pass


class IncompleteDataError(SurfkitError, ValueError):
    pass


class ScenarioError(SurfkitError, ValueError):
    """Malformed scenario input; ``line`` is 1-based or None."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
