from pathlib import Path


class CltScopeError(ValueError):
    """Base class for every domain error raised by cltscope."""


class InvalidInputError(CltScopeError):
    pass


class UnsupportedDegreeError(InvalidInputError):
    pass


class DegenerateDistributionError(CltScopeError):
    pass


class LatticeUndefinedError(CltScopeError):
    pass


class NonLatticeError(CltScopeError):
    pass


class MissingMomentError(CltScopeError):
    pass


class InconsistencyError(CltScopeError):
    pass


class TruncationError(CltScopeError):
    pass


class SupportMismatchError(CltScopeError):
    pass


class ParseError(CltScopeError):
    def __init__(self, path: str | Path, line: int, reason: str) -> None:
        self.path = str(path)
        self.line = line
        self.reason = reason
        super().__init__(f"{self.path}:{line}: {reason}")
